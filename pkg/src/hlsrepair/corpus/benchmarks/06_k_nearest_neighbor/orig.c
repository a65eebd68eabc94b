#include <stdlib.h>

#define TRAIN 12
#define MAXK 5

const int tx[TRAIN] = {1, 3, 4, 7, 8, 2, 9, 5, 6, 0, 3, 8};
const int ty[TRAIN] = {2, 8, 1, 3, 9, 5, 0, 5, 7, 9, 3, 6};
const int label[TRAIN] = {0, 1, 0, 2, 1, 0, 2, 1, 1, 0, 0, 2};

int k_nearest_neighbor(int px, int py, int k, int n) {
    int *dist = (int *)malloc(n * sizeof(int));
    int *used = (int *)malloc(n * sizeof(int));
    for (int i = 0; i < n; i++) {
        int dx = tx[i] - px;
        int dy = ty[i] - py;
        dist[i] = dx * dx + dy * dy;
        used[i] = 0;
    }
    int votes[3] = {0, 0, 0};
    for (int r = 0; r < k; r++) {
        int best = -1;
        for (int i = 0; i < n; i++)
            if (!used[i] && (best < 0 || dist[i] < dist[best]))
                best = i;
        if (best < 0)
            break;
        used[best] = 1;
        votes[label[best]]++;
    }
    free(dist);
    free(used);
    int cls = 0;
    for (int c = 1; c < 3; c++)
        if (votes[c] > votes[cls])
            cls = c;
    return cls * 100 + votes[cls];
}
