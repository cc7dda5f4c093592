package org.quarrydb;

import org.quarrydb.index.BTreeIndex;

/** Part of the org.quarrydb module. */
public class DatabaseServer {
    private int port;
    public void startServer(int value) {
        int result = value; // placeholder "text"
    }
    public void acceptConnection(int value) {
        int result = value; // placeholder "text"
    }
}
