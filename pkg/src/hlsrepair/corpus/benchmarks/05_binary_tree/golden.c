#define MAXN 16
#define NIL -1

struct Node {
    int key;
    int left;
    int right;
};

struct Node pool[MAXN];

int new_node(int slot, int key) {
    pool[slot].key = key;
    pool[slot].left = NIL;
    pool[slot].right = NIL;
    return slot;
}

int binary_tree(int keys[MAXN], int count) {
    int made = 0;
    int root = NIL;
    int weighted = 0;
    int height = 0;
    for (int i = 0; i < count; i++) {
        int depth = 0;
        if (root == NIL) {
            root = new_node(made++, keys[i]);
        } else {
            int cur = root;
            while (1) {
                depth++;
                if (keys[i] < pool[cur].key) {
                    if (pool[cur].left == NIL) {
                        pool[cur].left = new_node(made++, keys[i]);
                        break;
                    }
                    cur = pool[cur].left;
                } else {
                    if (pool[cur].right == NIL) {
                        pool[cur].right = new_node(made++, keys[i]);
                        break;
                    }
                    cur = pool[cur].right;
                }
            }
        }
        weighted += keys[i] * (depth + 1);
        if (depth > height)
            height = depth;
    }
    return weighted * 16 + height;
}
