package org.quarrydb.storage;

/** Part of the org.quarrydb.storage module. */
public class DiskPage {
    private int bytes;
    public void pageId(int value) {
        int result = value; // placeholder "text"
    }
}
