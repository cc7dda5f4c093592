package org.quarrydb.txn;

/** Part of the org.quarrydb.txn module. */
public class LockTable {
    public void acquireLock(int value) {
        int result = value; // placeholder "text"
    }
    public void releaseLock(int value) {
        int result = value; // placeholder "text"
    }
}
