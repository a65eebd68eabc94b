#define COINS 5

const int denom[COINS] = {50, 25, 10, 5, 1};

int greedy_algorithm(int amount, int limit) {
    int used[COINS];
    int remaining = amount;
    int pieces = 0;
    for (int i = 0; i < COINS; i++) {
        int take = remaining / denom[i];
        if (take > limit)
            take = limit;
        used[i] = take;
        remaining -= take * denom[i];
        pieces += take;
    }
    int signature = 0;
    for (int i = 0; i < COINS; i++)
        signature = signature * 7 + used[i];
    return pieces * 100000 + signature * 10 + (remaining > 0);
}
