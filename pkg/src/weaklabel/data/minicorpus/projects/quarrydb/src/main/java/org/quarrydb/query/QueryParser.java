package org.quarrydb.query;

import org.quarrydb.DatabaseServer;

/** Part of the org.quarrydb.query module. */
public class QueryParser {
    public void parseQuery(int value) {
        int result = value; // placeholder "text"
    }
    public void sqlText(int value) {
        int result = value; // placeholder "text"
    }
}
