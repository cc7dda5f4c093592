package org.pixelforge.image;

/** Part of the org.pixelforge.image module. */
public class ImageReader {
    public void readImage(int value) {
        int result = value; // placeholder "text"
    }
    public void decodePixels(int value) {
        int result = value; // placeholder "text"
    }
}
