"""Transcriptions of the worked examples used as golden inputs."""

from apizer.naming import SoPage

CALENDAR_SNIPPET = """\
Calendar calendar = Calendar.getInstance();
int week = 3;
int year = 2010;
calendar.clear();
calendar.set(Calendar.WEEK_OF_YEAR, week);
calendar.set(Calendar.YEAR, year);
Date date = calendar.getTime();
"""

CALENDAR_PAGE = SoPage(
    title="How to get the first day of the week given week number and year",
    url="https://stackoverflow.com/a/2109186",
    answer_id=2109186,
    question_id=2109145,
)

CALENDAR_HUMAN = """\
import java.util.Calendar;
import java.util.Date;

public class Human2109186 {
    public static Date getFirstDayOfWeek(int week, int year) throws Exception {
        Calendar calendar = Calendar.getInstance();
        calendar.clear();
        calendar.set(Calendar.WEEK_OF_YEAR, week);
        calendar.set(Calendar.YEAR, year);
        return calendar.getTime();
    }
}
"""

DIGEST_SNIPPET = """\
String hash = null;
try {
    MessageDigest md = MessageDigest.getInstance("MD5");
    byte[] digest = md.digest(tag_xml.getBytes());
    hash = new BigInteger(1, digest).toString(16);
} catch (NoSuchAlgorithmException e) {
    e.printStackTrace();
}
"""

COUNT_SNIPPET = """\
String str = "helloslkhellodjladfjhello";
String findStr = "hello";
int lastIndex = 0;
int count = 0;
while (lastIndex != -1) {
    lastIndex = str.indexOf(findStr, lastIndex);
    if (lastIndex != -1) {
        count++;
        lastIndex += findStr.length();
    }
}
System.out.println(count);
"""

COUNT_METHOD = """\
public static int countMatches(String str, String findStr) {
    int lastIndex = 0;
    int count = 0;
    while (lastIndex != -1) {
        lastIndex = str.indexOf(findStr, lastIndex);
        if (lastIndex != -1) {
            count++;
            lastIndex += findStr.length();
        }
    }
    return count;
}
"""
