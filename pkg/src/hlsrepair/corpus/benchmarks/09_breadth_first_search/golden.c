/* Binary search tree of the input keys, walked level by level into a checksum. */

#define MAX_NODES 16
#define MAX 65535

typedef struct TreeNode {
    int left;
    int right;
    unsigned int key;
} TreeNode;

TreeNode Pool[MAX_NODES];
int pool_used;
int treeRoot;

unsigned int visit_order[MAX_NODES];
unsigned int checksum;
unsigned int largest;
int visits;
int leaves;

int create_node(unsigned int key) {
    int node = pool_used;
    pool_used++;
    Pool[node].key = key;
    Pool[node].left = MAX;
    Pool[node].right = MAX;
    return node;
}

void init_tree(void) {
    pool_used = 0;
    treeRoot = MAX;
}

void add_node(unsigned int key) {
    int node = create_node(key);
    if (treeRoot == MAX) {
        treeRoot = node;
        return;
    }
    int cur = treeRoot;
    while (1) {
        if (key < Pool[cur].key) {
            if (Pool[cur].left == MAX) {
                Pool[cur].left = node;
                return;
            }
            cur = Pool[cur].left;
        } else {
            if (Pool[cur].right == MAX) {
                Pool[cur].right = node;
                return;
            }
            cur = Pool[cur].right;
        }
    }
}

int contains(unsigned int key) {
    int cur = treeRoot;
    while (cur != MAX) {
        if (Pool[cur].key == key)
            return 1;
        cur = key < Pool[cur].key ? Pool[cur].left : Pool[cur].right;
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

/* Visits the nodes that sit `level` steps below `root`, left to right. */
void BFS(int root, int level) {
    int node_stack[MAX_NODES];
    int level_stack[MAX_NODES];
    int top = 0;
    if (root == MAX)
        return;
    node_stack[0] = root;
    level_stack[0] = level;
    top = 1;
    while (top > 0) {
        top--;
        int node = node_stack[top];
        int lv = level_stack[top];
        if (lv == 1) {
            unsigned int m = Pool[node].key;
            process(m);
            if (Pool[node].left == MAX && Pool[node].right == MAX)
                leaves++;
            continue;
        }
        if (Pool[node].right != MAX) {
            node_stack[top] = Pool[node].right;
            level_stack[top] = lv - 1;
            top++;
        }
        if (Pool[node].left != MAX) {
            node_stack[top] = Pool[node].left;
            level_stack[top] = lv - 1;
            top++;
        }
    }
}

int height(int root) {
    int node_stack[MAX_NODES];
    int depth_stack[MAX_NODES];
    int top = 0;
    int best = 0;
    if (root == MAX)
        return 0;
    node_stack[0] = root;
    depth_stack[0] = 1;
    top = 1;
    while (top > 0) {
        top--;
        int node = node_stack[top];
        int d = depth_stack[top];
        if (d > best)
            best = d;
        if (Pool[node].left != MAX) {
            node_stack[top] = Pool[node].left;
            depth_stack[top] = d + 1;
            top++;
        }
        if (Pool[node].right != MAX) {
            node_stack[top] = Pool[node].right;
            depth_stack[top] = d + 1;
            top++;
        }
    }
    return best;
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
    init_tree();
    reset_stats();
    for (int i = 0; i < n; i++)
        add_node(keys[i]);
    int h = height(treeRoot);
    for (int level = 1; level <= h; level++)
        BFS(treeRoot, level);
    unsigned int result = summarize(h);
    if (n > 0 && contains(keys[n - 1]))
        result = result + 1u;
    return result;
}
