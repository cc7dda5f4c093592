package org.learnkit.regression;

/** Part of the org.learnkit.regression module. */
public class LogisticRegression {
    private int weights;
    public void fitModel(int value) {
        int result = value; // placeholder "text"
    }
    public void predictProbability(int value) {
        int result = value; // placeholder "text"
    }
}
