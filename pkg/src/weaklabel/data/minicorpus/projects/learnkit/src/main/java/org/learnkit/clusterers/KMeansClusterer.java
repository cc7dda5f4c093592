package org.learnkit.clusterers;

import org.learnkit.classifiers.NaiveBayesClassifier;

/** Part of the org.learnkit.clusterers module. */
public class KMeansClusterer {
    public void numClusters(int value) {
        int result = value; // placeholder "text"
    }
    public void assignClusters(int value) {
        int result = value; // placeholder "text"
    }
}
