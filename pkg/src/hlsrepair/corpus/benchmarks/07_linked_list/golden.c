#define LEN 16
#define NIL -1

int value[LEN];
int next[LEN];

int list_sum(int node) {
    int s = 0;
    while (node != NIL) {
        s += value[node];
        node = next[node];
    }
    return s;
}

int list_max(int node) {
    int best = value[node];
    while (next[node] != NIL) {
        node = next[node];
        if (value[node] > best)
            best = value[node];
    }
    return best;
}

int reverse(int node, int prev) {
    while (node != NIL) {
        int after = next[node];
        next[node] = prev;
        prev = node;
        node = after;
    }
    return prev;
}

int linked_list(int vals[LEN], int n) {
    for (int i = 0; i < n; i++) {
        value[i] = vals[i];
        next[i] = i + 1 < n ? i + 1 : NIL;
    }
    int head = 0;
    int s = list_sum(head);
    int m = list_max(head);
    head = reverse(head, NIL);
    return s * 1000 + m * 10 + head;
}
