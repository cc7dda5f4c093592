package org.pixelforge.image;

/** Part of the org.pixelforge.image module. */
public class ColorSpace {
    public void toRgb(int value) {
        int result = value; // placeholder "text"
    }
    public void fromRgb(int value) {
        int result = value; // placeholder "text"
    }
}
