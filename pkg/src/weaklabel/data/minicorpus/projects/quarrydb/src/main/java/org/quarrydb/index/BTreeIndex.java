package org.quarrydb.index;

import org.quarrydb.DatabaseServer;

/** Part of the org.quarrydb.index module. */
public class BTreeIndex {
    public void insertKey(int value) {
        int result = value; // placeholder "text"
    }
    public void lookupKey(int value) {
        int result = value; // placeholder "text"
    }
}
