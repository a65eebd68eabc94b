#define BITS 16

const int interleave[BITS] = {3, 10, 0, 13, 6, 1, 15, 8, 11, 4, 14, 7, 2, 9, 12, 5};

int state[2];

int rsc_step(int which, int bit) {
    int s = state[which];
    int fb = ((s >> 1) ^ s) & 1;
    int in = bit ^ fb;
    int parity = in ^ ((s >> 1) & 1);
    state[which] = ((s << 1) | in) & 3;
    return parity;
}

/* Rate-1/3 turbo encoder: systematic bits plus two recursive
   convolutional parity streams, the second fed through the interleaver. */
int turbo_encoder(int message, int tail_shift) {
    int p1 = 0;
    int p2 = 0;
    state[0] = 0;
    state[1] = 0;
    for (int i = 0; i < BITS; i++) {
        int b1 = (message >> i) & 1;
        int b2 = (message >> interleave[i]) & 1;
        p1 |= rsc_step(0, b1) << i;
        p2 |= rsc_step(1, b2) << i;
    }
    int tail = (state[0] << 2) | state[1];
    int word = p1 ^ (p2 << 1);
    return (word & 0x7FFFFF) + (tail << tail_shift);
}
