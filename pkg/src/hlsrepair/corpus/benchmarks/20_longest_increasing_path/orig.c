#define R 4
#define C 4

typedef int (*order_fn)(int a, int b);

int ascending(int a, int b) {
    return a < b;
}

int descending(int a, int b) {
    return a > b;
}

int longest_increasing_path(int grid[R * C], int reverse) {
    order_fn better = reverse ? descending : ascending;
    int best[R * C];
    int order[R * C];
    for (int i = 0; i < R * C; i++) {
        best[i] = 1;
        order[i] = i;
    }
    /* process cells so that every predecessor is finished first */
    for (int i = 1; i < R * C; i++) {
        int j = i;
        while (j > 0 && better(grid[order[j]], grid[order[j - 1]])) {
            int t = order[j];
            order[j] = order[j - 1];
            order[j - 1] = t;
            j--;
        }
    }
    int answer = 1;
    for (int k = 0; k < R * C; k++) {
        int cell = order[k];
        int r = cell / C;
        int c = cell % C;
        int nbr[4] = {r > 0 ? cell - C : -1, r < R - 1 ? cell + C : -1,
                      c > 0 ? cell - 1 : -1, c < C - 1 ? cell + 1 : -1};
        for (int d = 0; d < 4; d++) {
            int m = nbr[d];
            if (m >= 0 && better(grid[m], grid[cell]) && best[m] + 1 > best[cell])
                best[cell] = best[m] + 1;
        }
        if (best[cell] > answer)
            answer = best[cell];
    }
    return answer;
}
