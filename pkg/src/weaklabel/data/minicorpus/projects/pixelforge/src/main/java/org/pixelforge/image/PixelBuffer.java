package org.pixelforge.image;

import org.pixelforge.filter.GaussianBlurFilter;

/** Part of the org.pixelforge.image module. */
public class PixelBuffer {
    private int width;
    private int height;
    public void setPixel(int value) {
        int result = value; // placeholder "text"
    }
    public void getPixel(int value) {
        int result = value; // placeholder "text"
    }
}
