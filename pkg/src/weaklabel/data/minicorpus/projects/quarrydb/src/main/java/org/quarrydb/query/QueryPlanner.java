package org.quarrydb.query;

/** Part of the org.quarrydb.query module. */
public class QueryPlanner {
    public void planQuery(int value) {
        int result = value; // placeholder "text"
    }
    public void estimateCost(int value) {
        int result = value; // placeholder "text"
    }
}
