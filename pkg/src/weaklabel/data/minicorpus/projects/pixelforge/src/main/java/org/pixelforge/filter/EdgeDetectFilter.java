package org.pixelforge.filter;

/** Part of the org.pixelforge.filter module. */
public class EdgeDetectFilter {
    public void detectEdges(int value) {
        int result = value; // placeholder "text"
    }
    public void gradientThreshold(int value) {
        int result = value; // placeholder "text"
    }
}
