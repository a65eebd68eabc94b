#define N 4

int grid[N][N];

void swap_rows(int **a, int **b) {
    int *t = *a;
    *a = *b;
    *b = t;
}

int row_weight(int **rows, int r) {
    int s = 0;
    for (int j = 0; j < N; j++)
        s += rows[r][j] * (j + 1);
    return s;
}

int double_pointer(int seed, int flips) {
    int *rows[N];
    for (int i = 0; i < N; i++) {
        for (int j = 0; j < N; j++)
            grid[i][j] = (seed * (i + 1) + j * 3) % 17;
        rows[i] = grid[i];
    }
    int **pp = rows;
    for (int f = 0; f < flips; f++)
        swap_rows(&rows[f % N], &rows[(f * 3 + 1) % N]);
    int acc = 0;
    for (int i = 0; i < N; i++)
        acc += row_weight(pp, i) * (i + 1);
    return acc;
}
