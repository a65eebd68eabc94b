#define LEN 16
#define NIL -1

int value[LEN];
int next[LEN];

int list_sum(int node) {
    if (node == NIL)
        return 0;
    return value[node] + list_sum(next[node]);
}

int list_max(int node) {
    if (next[node] == NIL)
        return value[node];
    int rest = list_max(next[node]);
    return value[node] > rest ? value[node] : rest;
}

int reverse(int node, int prev) {
    if (node == NIL)
        return prev;
    int after = next[node];
    next[node] = prev;
    return reverse(after, node);
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
