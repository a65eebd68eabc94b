#include <stdlib.h>

/* Binary search tree of the input keys, walked level by level into a checksum. */

#define MAX_NODES 16

typedef struct TreeNode {
    unsigned int key;
    struct TreeNode *left, *right;
} TreeNode;

typedef struct Tree {
    TreeNode *root;
    int size;
} Tree;

unsigned int visit_order[MAX_NODES];
unsigned int checksum;
unsigned int largest;
int visits;
int leaves;

TreeNode *create_node(unsigned int key) {
    TreeNode *node = (TreeNode *)malloc(sizeof(TreeNode));
    node->key = key;
    node->left = 0;
    node->right = 0;
    return node;
}

void init_tree(Tree *tree) {
    tree->root = 0;
    tree->size = 0;
}

void add_node(Tree *tree, unsigned int key) {
    TreeNode *node = create_node(key);
    tree->size++;
    if (tree->root == 0) {
        tree->root = node;
        return;
    }
    TreeNode *cur = tree->root;
    while (1) {
        if (key < cur->key) {
            if (cur->left == 0) {
                cur->left = node;
                return;
            }
            cur = cur->left;
        } else {
            if (cur->right == 0) {
                cur->right = node;
                return;
            }
            cur = cur->right;
        }
    }
}

int contains(Tree *tree, unsigned int key) {
    TreeNode *cur = tree->root;
    while (cur != 0) {
        if (cur->key == key)
            return 1;
        cur = key < cur->key ? cur->left : cur->right;
    }
    return 0;
}

void process(unsigned int m) {
    visit_order[visits] = m;
    checksum = checksum * 33u + m;
    if (m > largest)
        largest = m;
    visits++;
}

void BFS(TreeNode *node, int level) {
    if (node == 0)
        return;
    if (level == 1) {
        unsigned int m = node->key;
        process(m);
        if (node->left == 0 && node->right == 0)
            leaves++;
        return;
    }
    BFS(node->left, level - 1);
    BFS(node->right, level - 1);
}

int height(TreeNode *node) {
    if (node == 0)
        return 0;
    int hl = height(node->left);
    int hr = height(node->right);
    return 1 + (hl > hr ? hl : hr);
}

void release(TreeNode *node) {
    if (node == 0)
        return;
    release(node->left);
    release(node->right);
    free(node);
}

void reset_stats(void) {
    checksum = 5381u;
    largest = 0u;
    visits = 0;
    leaves = 0;
}

unsigned int summarize(int h) {
    unsigned int s = checksum;
    s = s ^ (largest << 7);
    s = s + (unsigned int)(visits * 1000 + leaves * 10 + h);
    return s;
}

/* Top function: keys[0..n) are inserted in order, then the tree is walked
   level by level from the root. */
unsigned int bfs_top(unsigned int keys[MAX_NODES], int n) {
    Tree tree;
    init_tree(&tree);
    reset_stats();
    for (int i = 0; i < n; i++)
        add_node(&tree, keys[i]);
    int h = height(tree.root);
    for (int level = 1; level <= h; level++)
        BFS(tree.root, level);
    unsigned int result = summarize(h);
    if (n > 0 && contains(&tree, keys[n - 1]))
        result = result + 1u;
    release(tree.root);
    return result;
}
