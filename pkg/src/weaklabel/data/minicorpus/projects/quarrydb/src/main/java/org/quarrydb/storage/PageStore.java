package org.quarrydb.storage;

import org.quarrydb.DatabaseServer;

/** Part of the org.quarrydb.storage module. */
public class PageStore {
    public void pageCount(int value) {
        int result = value; // placeholder "text"
    }
    public void readPage(int value) {
        int result = value; // placeholder "text"
    }
    public void writePage(int value) {
        int result = value; // placeholder "text"
    }
}
