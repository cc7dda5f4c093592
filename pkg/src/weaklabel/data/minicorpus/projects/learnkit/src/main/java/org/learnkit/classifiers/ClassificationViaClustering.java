package org.learnkit.classifiers;

/** Part of the org.learnkit.classifiers module. */
public class ClassificationViaClustering {
    private int clusterer;
    public void classifyInstance(int value) {
        int result = value; // placeholder "text"
    }
}
