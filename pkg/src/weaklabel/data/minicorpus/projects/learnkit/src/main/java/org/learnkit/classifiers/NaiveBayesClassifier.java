package org.learnkit.classifiers;

import org.learnkit.clusterers.KMeansClusterer;

/** Part of the org.learnkit.classifiers module. */
public class NaiveBayesClassifier {
    private int priors;
    public void trainClassifier(int value) {
        int result = value; // placeholder "text"
    }
    public void classifyInstance(int value) {
        int result = value; // placeholder "text"
    }
}
