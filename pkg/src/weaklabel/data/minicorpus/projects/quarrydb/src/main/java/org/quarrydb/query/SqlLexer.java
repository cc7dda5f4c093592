package org.quarrydb.query;

/** Part of the org.quarrydb.query module. */
public class SqlLexer {
    public void nextToken(int value) {
        int result = value; // placeholder "text"
    }
    public void sqlInput(int value) {
        int result = value; // placeholder "text"
    }
}
