package org.learnkit.classifiers;

/** Part of the org.learnkit.classifiers module. */
public class Classifier {
    private int train;
    private int predict;
}
