#include <stdbool.h>

#define FEATURES 4
#define SAMPLES 6

const int weights[FEATURES] = {3, -2, 5, -1};
const int bias = -4;
const int samples[SAMPLES][FEATURES] = {
    {1, 2, 0, 3}, {4, 1, 2, 0}, {0, 3, 1, 1},
    {2, 2, 2, 2}, {5, 0, 1, 4}, {1, 4, 0, 0}
};

int decision(const int x[FEATURES], int scale) {
    int s = bias * scale;
    for (int f = 0; f < FEATURES; f++)
        s += weights[f] * x[f];
    return s;
}

int support_vector_machine(int scale, int labels) {
    bool any_positive = false;
    bool margin_hit = false;
    int correct = 0;
    for (int i = 0; i < SAMPLES; i++) {
        int d = decision(samples[i], scale);
        int predicted = d > 0;
        int wanted = (labels >> i) & 1;
        any_positive += predicted;
        if (d > -2 && d < 2)
            margin_hit++;
        if (predicted == wanted)
            correct++;
    }
    return correct * 100 + any_positive * 10 + margin_hit;
}
