package org.pixelforge.util;

import org.pixelforge.filter.GaussianBlurFilter;

/** Part of the org.pixelforge.util module. */
public class StringUtils {
    public void trimText(int value) {
        int result = value; // placeholder "text"
    }
}
