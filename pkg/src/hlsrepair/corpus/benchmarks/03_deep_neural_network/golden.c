#define IN 4
#define HID 6
#define OUT 3

const int w1[HID * IN] = {
    3, -2, 1, 0,   1, 4, -1, 2,   -3, 1, 2, 1,
    2, 2, -2, -1,  0, -1, 3, 2,   1, 0, 1, -4
};
const int w2[OUT * HID] = {
    2, -1, 1, 3, 0, -2,
    -1, 2, 0, 1, 3, 1,
    1, 1, -2, 0, 2, 2
};

int relu(int x) {
    return x > 0 ? x : 0;
}

void dense_hidden(const int in[IN], int out[HID]) {
    for (int r = 0; r < HID; r++) {
        int acc = 0;
        for (int c = 0; c < IN; c++)
            acc += w1[r * IN + c] * in[c];
        out[r] = relu(acc);
    }
}

void dense_output(const int in[HID], int out[OUT]) {
    for (int r = 0; r < OUT; r++) {
        int acc = 0;
        for (int c = 0; c < HID; c++)
            acc += w2[r * HID + c] * in[c];
        out[r] = acc;
    }
}

int argmax(const int v[OUT]) {
    int best = 0;
    for (int i = 1; i < OUT; i++)
        if (v[i] > v[best])
            best = i;
    return best;
}

int deep_neural_network(int x[IN]) {
    int hidden[HID];
    int logits[OUT];
    dense_hidden(x, hidden);
    dense_output(hidden, logits);
    return argmax(logits) * 10000 + logits[0] + logits[1] * 3 + logits[2] * 7;
}
