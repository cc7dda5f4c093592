package org.pixelforge.filter;

/** Part of the org.pixelforge.filter module. */
public class ImageFilter {
    public void filterImage(int value) {
        int result = value; // placeholder "text"
    }
}
