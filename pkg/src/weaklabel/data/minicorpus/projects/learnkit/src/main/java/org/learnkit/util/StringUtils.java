package org.learnkit.util;

import org.learnkit.classifiers.NaiveBayesClassifier;

/** Part of the org.learnkit.util module. */
public class StringUtils {
    public void trimText(int value) {
        int result = value; // placeholder "text"
    }
}
