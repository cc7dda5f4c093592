package org.pixelforge.render;

import org.pixelforge.filter.GaussianBlurFilter;

/** Part of the org.pixelforge.render module. */
public class ShapeRenderer {
    public void renderShape(int value) {
        int result = value; // placeholder "text"
    }
    public void strokeWidth(int value) {
        int result = value; // placeholder "text"
    }
}
