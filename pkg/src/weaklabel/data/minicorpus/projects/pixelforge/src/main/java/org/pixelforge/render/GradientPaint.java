package org.pixelforge.render;

/** Part of the org.pixelforge.render module. */
public class GradientPaint {
    public void startColor(int value) {
        int result = value; // placeholder "text"
    }
    public void endColor(int value) {
        int result = value; // placeholder "text"
    }
}
