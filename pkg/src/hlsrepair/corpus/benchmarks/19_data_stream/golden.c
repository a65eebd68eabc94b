#define WINDOW 4
#define STREAM 16

int stage_sum(int acc, int sample) {
    return acc + sample;
}

int stage_max(int acc, int sample) {
    return sample > acc ? sample : acc;
}

int stage_xor(int acc, int sample) {
    return acc ^ (sample * 31);
}

int apply_stage(int which, int acc, int sample) {
    switch (which) {
    case 0:
        return stage_sum(acc, sample);
    case 1:
        return stage_max(acc, sample);
    default:
        return stage_xor(acc, sample);
    }
}

int data_stream(int samples[STREAM], int n, int mode) {
    int which = mode % 3;
    int window[WINDOW] = {0, 0, 0, 0};
    int out = 0;
    for (int i = 0; i < n; i++) {
        window[i % WINDOW] = samples[i];
        int acc = 0;
        for (int k = 0; k < WINDOW; k++)
            acc = apply_stage(which, acc, window[k]);
        out = out * 3 + acc;
        out = out % 1000003;
    }
    return out;
}
