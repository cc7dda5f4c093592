package org.pixelforge.image;

/** Part of the org.pixelforge.image module. */
public class ImageWriter {
    public void writeImage(int value) {
        int result = value; // placeholder "text"
    }
    public void encodePixels(int value) {
        int result = value; // placeholder "text"
    }
}
