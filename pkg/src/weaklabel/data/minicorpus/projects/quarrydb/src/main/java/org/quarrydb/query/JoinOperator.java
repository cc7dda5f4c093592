package org.quarrydb.query;

/** Part of the org.quarrydb.query module. */
public class JoinOperator {
    public void leftTable(int value) {
        int result = value; // placeholder "text"
    }
    public void rightTable(int value) {
        int result = value; // placeholder "text"
    }
    public void joinRows(int value) {
        int result = value; // placeholder "text"
    }
}
