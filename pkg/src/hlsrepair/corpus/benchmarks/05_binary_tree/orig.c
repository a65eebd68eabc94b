#include <stdlib.h>

#define MAXN 16

struct Node {
    int key;
    struct Node *left;
    struct Node *right;
};

struct Node *new_node(int key) {
    struct Node *n = (struct Node *)malloc(sizeof(struct Node));
    n->key = key;
    n->left = 0;
    n->right = 0;
    return n;
}

int binary_tree(int keys[MAXN], int count) {
    struct Node *all[MAXN];
    int made = 0;
    struct Node *root = 0;
    int weighted = 0;
    int height = 0;
    for (int i = 0; i < count; i++) {
        int depth = 0;
        if (root == 0) {
            root = new_node(keys[i]);
            all[made++] = root;
        } else {
            struct Node *cur = root;
            while (1) {
                depth++;
                if (keys[i] < cur->key) {
                    if (cur->left == 0) {
                        cur->left = new_node(keys[i]);
                        all[made++] = cur->left;
                        break;
                    }
                    cur = cur->left;
                } else {
                    if (cur->right == 0) {
                        cur->right = new_node(keys[i]);
                        all[made++] = cur->right;
                        break;
                    }
                    cur = cur->right;
                }
            }
        }
        weighted += keys[i] * (depth + 1);
        if (depth > height)
            height = depth;
    }
    for (int i = 0; i < made; i++)
        free(all[i]);
    return weighted * 16 + height;
}
