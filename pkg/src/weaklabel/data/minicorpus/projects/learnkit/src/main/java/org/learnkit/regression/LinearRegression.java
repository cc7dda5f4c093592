package org.learnkit.regression;

import org.learnkit.classifiers.NaiveBayesClassifier;

/** Part of the org.learnkit.regression module. */
public class LinearRegression {
    private int coefficients;
    public void fitModel(int value) {
        int result = value; // placeholder "text"
    }
}
