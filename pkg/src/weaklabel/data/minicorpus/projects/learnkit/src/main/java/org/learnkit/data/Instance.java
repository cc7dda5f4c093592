package org.learnkit.data;

/** Part of the org.learnkit.data module. */
public class Instance {
    private int features;
    public void classValue(int value) {
        int result = value; // placeholder "text"
    }
}
