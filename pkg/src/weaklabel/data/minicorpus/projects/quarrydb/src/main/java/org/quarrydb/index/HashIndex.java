package org.quarrydb.index;

/** Part of the org.quarrydb.index module. */
public class HashIndex {
    public void bucketCount(int value) {
        int result = value; // placeholder "text"
    }
    public void probeKey(int value) {
        int result = value; // placeholder "text"
    }
}
