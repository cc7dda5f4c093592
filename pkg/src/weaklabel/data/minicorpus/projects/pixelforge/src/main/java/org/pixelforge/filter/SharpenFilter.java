package org.pixelforge.filter;

/** Part of the org.pixelforge.filter module. */
public class SharpenFilter {
    private int amount;
    public void applySharpen(int value) {
        int result = value; // placeholder "text"
    }
}
