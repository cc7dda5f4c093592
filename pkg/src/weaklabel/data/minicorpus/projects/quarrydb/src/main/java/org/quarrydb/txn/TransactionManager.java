package org.quarrydb.txn;

import org.quarrydb.DatabaseServer;

/** Part of the org.quarrydb.txn module. */
public class TransactionManager {
    private int rollback;
    public void beginTransaction(int value) {
        int result = value; // placeholder "text"
    }
    public void commitTransaction(int value) {
        int result = value; // placeholder "text"
    }
}
