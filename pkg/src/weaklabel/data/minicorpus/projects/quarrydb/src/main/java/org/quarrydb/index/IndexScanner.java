package org.quarrydb.index;

/** Part of the org.quarrydb.index module. */
public class IndexScanner {
    private int cursor;
    public void scanIndex(int value) {
        int result = value; // placeholder "text"
    }
}
