#include <stdbool.h>

#define PIXELS 8

const int ccm[3][3] = {
    {300, -30, -14},
    {-20, 290, -14},
    {-10, -40, 306}
};

int clamp8(int v) {
    if (v < 0)
        return 0;
    if (v > 255)
        return 255;
    return v;
}

int color_correction(int rgb[PIXELS * 3], int gain) {
    bool clipped = false;
    bool dark = false;
    int sum = 0;
    for (int p = 0; p < PIXELS; p++) {
        int out[3];
        for (int c = 0; c < 3; c++) {
            int acc = 0;
            for (int k = 0; k < 3; k++)
                acc += ccm[c][k] * rgb[p * 3 + k];
            acc = acc * gain / 256;
            int v = clamp8(acc);
            clipped |= v != acc;
            clipped += v == 255;
            out[c] = v;
        }
        if (out[0] + out[1] + out[2] < 60)
            dark++;
        sum += out[0] * 3 + out[1] * 5 + out[2];
    }
    return sum * 4 + clipped * 2 + dark;
}
