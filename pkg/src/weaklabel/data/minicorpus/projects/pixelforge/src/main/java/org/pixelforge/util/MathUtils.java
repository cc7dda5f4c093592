package org.pixelforge.util;

/** Part of the org.pixelforge.util module. */
public class MathUtils {
    private int lerp;
    public void clampValue(int value) {
        int result = value; // placeholder "text"
    }
}
