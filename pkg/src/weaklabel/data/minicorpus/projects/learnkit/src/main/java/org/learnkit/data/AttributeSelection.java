package org.learnkit.data;

/** Part of the org.learnkit.data module. */
public class AttributeSelection {
    public void selectAttributes(int value) {
        int result = value; // placeholder "text"
    }
    public void rankAttributes(int value) {
        int result = value; // placeholder "text"
    }
}
