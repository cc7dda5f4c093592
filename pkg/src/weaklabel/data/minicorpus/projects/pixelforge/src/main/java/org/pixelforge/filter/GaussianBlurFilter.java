package org.pixelforge.filter;

import org.pixelforge.image.PixelBuffer;

/** Part of the org.pixelforge.filter module. */
public class GaussianBlurFilter {
    private int radius;
    public void applyBlur(int value) {
        int result = value; // placeholder "text"
    }
    public void kernelWeights(int value) {
        int result = value; // placeholder "text"
    }
}
