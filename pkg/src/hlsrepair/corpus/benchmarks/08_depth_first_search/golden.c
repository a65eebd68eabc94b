#define V 8

int adj[V][V];
int visited[V];
int order[V];
int seen;

void dfs(int start) {
    int stack_node[V];
    int stack_next[V];
    int top = 0;
    visited[start] = 1;
    order[seen++] = start;
    stack_node[0] = start;
    stack_next[0] = 0;
    while (top >= 0) {
        int u = stack_node[top];
        int v = stack_next[top];
        while (v < V && !(adj[u][v] && !visited[v]))
            v++;
        if (v == V) {
            top--;
            continue;
        }
        stack_next[top] = v + 1;
        visited[v] = 1;
        order[seen++] = v;
        top++;
        stack_node[top] = v;
        stack_next[top] = 0;
    }
}

int depth_first_search(int edges[V], int start) {
    for (int i = 0; i < V; i++) {
        visited[i] = 0;
        for (int j = 0; j < V; j++)
            adj[i][j] = (edges[i] >> j) & 1;
    }
    seen = 0;
    dfs(start);
    int code = 0;
    for (int i = 0; i < seen; i++)
        code = code * 3 + order[i] + 1;
    return code * 16 + seen;
}
