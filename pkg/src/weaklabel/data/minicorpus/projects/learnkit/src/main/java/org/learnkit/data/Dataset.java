package org.learnkit.data;

import org.learnkit.classifiers.NaiveBayesClassifier;

/** Part of the org.learnkit.data module. */
public class Dataset {
    private int instances;
    public void addInstance(int value) {
        int result = value; // placeholder "text"
    }
}
