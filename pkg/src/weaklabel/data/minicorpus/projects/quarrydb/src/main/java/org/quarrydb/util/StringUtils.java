package org.quarrydb.util;

import org.quarrydb.DatabaseServer;

/** Part of the org.quarrydb.util module. */
public class StringUtils {
    public void trimText(int value) {
        int result = value; // placeholder "text"
    }
    public void joinParts(int value) {
        int result = value; // placeholder "text"
    }
}
