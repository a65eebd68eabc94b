#define N 8

/* cos and sin of 2*pi*k/8 scaled by 64 */
const int cos_t[N] = {64, 45, 0, -45, -64, -45, 0, 45};
const int sin_t[N] = {0, 45, 64, 45, 0, -45, -64, -45};

int fourier_transform(int x[N], int bins) {
    _Bool saturated = 0;
    _Bool has_dc = 0;
    int energy = 0;
    for (int k = 0; k < bins; k++) {
        int re = 0;
        int im = 0;
        for (int n = 0; n < N; n++) {
            int idx = (k * n) % N;
            re += x[n] * cos_t[idx];
            im -= x[n] * sin_t[idx];
        }
        re = re / 64;
        im = im / 64;
        int p = re * re + im * im;
        if (k == 0)
            has_dc += p != 0;
        if (p > 4000)
            ++saturated;
        energy += p;
    }
    return energy * 4 + saturated * 2 + has_dc;
}
