#define WINDOW 8
#define SAMPLES 16

int history[WINDOW];

/* Median-free spike filter: a sample far from the running mean is dumped
   and replaced by the mean. */
int dump_filter(int samples[SAMPLES], int n, int tolerance, int debug) {
    int filled = 0;
    int dumped = 0;
    int out = 0;
    for (int i = 0; i < WINDOW; i++)
        history[i] = 0;
    for (int i = 0; i < n; i++) {
        int mean = 0;
        if (filled > 0) {
            for (int k = 0; k < filled; k++)
                mean += history[k];
            mean /= filled;
        }
        int x = samples[i];
        int diff = x > mean ? x - mean : mean - x;
        if (filled > 2 && diff > tolerance) {
            x = mean;
            dumped++;
        }
        if (filled < WINDOW) {
            history[filled] = x;
            filled++;
        } else {
            for (int k = 1; k < WINDOW; k++)
                history[k - 1] = history[k];
            history[WINDOW - 1] = x;
        }
        out = (out * 7 + x) % 100003;
    }
    if (debug == 3)
        history[WINDOW] = dumped;
    return out * 32 + dumped;
}
