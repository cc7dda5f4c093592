package org.pixelforge.render;

/** Part of the org.pixelforge.render module. */
public class Canvas {
    public void drawImage(int value) {
        int result = value; // placeholder "text"
    }
    public void drawShape(int value) {
        int result = value; // placeholder "text"
    }
}
