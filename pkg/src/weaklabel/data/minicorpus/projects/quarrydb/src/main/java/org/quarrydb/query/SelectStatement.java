package org.quarrydb.query;

/** Part of the org.quarrydb.query module. */
public class SelectStatement {
    private int columns;
    public void whereClause(int value) {
        int result = value; // placeholder "text"
    }
}
