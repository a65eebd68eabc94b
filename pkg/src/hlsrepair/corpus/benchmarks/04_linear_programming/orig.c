#include <stdlib.h>

#define GRID 11

int objective(int c1, int c2, int x, int y) {
    return c1 * x + c2 * y;
}

int feasible_point(int x, int y, int b1, int b2) {
    return x + 2 * y <= b1 && 3 * x + y <= b2;
}

int linear_programming(int c1, int c2, int b1, int b2) {
    int *feasible = (int *)malloc(GRID * GRID * sizeof(int));
    int count = 0;
    for (int x = 0; x < GRID; x++)
        for (int y = 0; y < GRID; y++) {
            feasible[x * GRID + y] = feasible_point(x, y, b1, b2);
            count += feasible[x * GRID + y];
        }
    int best = -1;
    int arg = -1;
    for (int k = 0; k < GRID * GRID; k++) {
        if (!feasible[k])
            continue;
        int v = objective(c1, c2, k / GRID, k % GRID);
        if (v > best) {
            best = v;
            arg = k;
        }
    }
    free(feasible);
    return best * 1000 + arg * 4 + (count & 3);
}
