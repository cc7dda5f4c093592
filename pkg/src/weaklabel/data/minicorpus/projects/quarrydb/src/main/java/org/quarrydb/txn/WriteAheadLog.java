package org.quarrydb.txn;

/** Part of the org.quarrydb.txn module. */
public class WriteAheadLog {
    public void appendRecord(int value) {
        int result = value; // placeholder "text"
    }
    public void replayLog(int value) {
        int result = value; // placeholder "text"
    }
}
