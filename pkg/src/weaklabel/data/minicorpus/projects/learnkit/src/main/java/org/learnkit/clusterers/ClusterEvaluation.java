package org.learnkit.clusterers;

/** Part of the org.learnkit.clusterers module. */
public class ClusterEvaluation {
    private int silhouette;
    public void evaluateClusters(int value) {
        int result = value; // placeholder "text"
    }
}
