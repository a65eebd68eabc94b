#define N 4

int grid[N][N];

void swap_rows(int order[N], int a, int b) {
    int t = order[a];
    order[a] = order[b];
    order[b] = t;
}

int row_weight(int order[N], int r) {
    int s = 0;
    for (int j = 0; j < N; j++)
        s += grid[order[r]][j] * (j + 1);
    return s;
}

int double_pointer(int seed, int flips) {
    int order[N];
    for (int i = 0; i < N; i++) {
        for (int j = 0; j < N; j++)
            grid[i][j] = (seed * (i + 1) + j * 3) % 17;
        order[i] = i;
    }
    for (int f = 0; f < flips; f++)
        swap_rows(order, f % N, (f * 3 + 1) % N);
    int acc = 0;
    for (int i = 0; i < N; i++)
        acc += row_weight(order, i) * (i + 1);
    return acc;
}
