#define WINDOW 4
#define STREAM 16

typedef int (*stage_fn)(int acc, int sample);

int stage_sum(int acc, int sample) {
    return acc + sample;
}

int stage_max(int acc, int sample) {
    return sample > acc ? sample : acc;
}

int stage_xor(int acc, int sample) {
    return acc ^ (sample * 31);
}

int data_stream(int samples[STREAM], int n, int mode) {
    stage_fn stages[3] = {stage_sum, stage_max, stage_xor};
    stage_fn reduce = stages[mode % 3];
    int window[WINDOW] = {0, 0, 0, 0};
    int out = 0;
    for (int i = 0; i < n; i++) {
        window[i % WINDOW] = samples[i];
        int acc = 0;
        for (int k = 0; k < WINDOW; k++)
            acc = reduce(acc, window[k]);
        out = out * 3 + acc;
        out = out % 1000003;
    }
    return out;
}
