package org.quarrydb.storage;

/** Part of the org.quarrydb.storage module. */
public class StorageEngine {
    public void openTable(int value) {
        int result = value; // placeholder "text"
    }
    public void flushPages(int value) {
        int result = value; // placeholder "text"
    }
}
