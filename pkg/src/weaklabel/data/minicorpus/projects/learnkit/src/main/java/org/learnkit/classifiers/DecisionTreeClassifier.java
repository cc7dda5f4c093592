package org.learnkit.classifiers;

/** Part of the org.learnkit.classifiers module. */
public class DecisionTreeClassifier {
    public void maxDepth(int value) {
        int result = value; // placeholder "text"
    }
    public void buildTree(int value) {
        int result = value; // placeholder "text"
    }
    public void classifyInstance(int value) {
        int result = value; // placeholder "text"
    }
}
