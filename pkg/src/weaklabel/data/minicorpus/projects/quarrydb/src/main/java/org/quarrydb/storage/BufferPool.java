package org.quarrydb.storage;

/** Part of the org.quarrydb.storage module. */
public class BufferPool {
    private int capacity;
    public void pinPage(int value) {
        int result = value; // placeholder "text"
    }
    public void evictPage(int value) {
        int result = value; // placeholder "text"
    }
}
