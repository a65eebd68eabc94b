#define V 8

int adj[V][V];
int visited[V];
int order[V];
int seen;

void dfs(int u) {
    visited[u] = 1;
    order[seen++] = u;
    for (int v = 0; v < V; v++)
        if (adj[u][v] && !visited[v])
            dfs(v);
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
