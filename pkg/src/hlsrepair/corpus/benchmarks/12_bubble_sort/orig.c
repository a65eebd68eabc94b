#define LEN 10

int bubble_sort(int data[LEN], int n) {
    int swaps = 0;
    int passes = 0;
    for (int i = 0; i < n - 1; i++) {
        int changed = 0;
        for (int j = 0; j < n - 1 - i; j++) {
            if (data[j] > data[j + 1]) {
                int t = data[j];
                data[j] = data[j + 1];
                data[j + 1] = t;
                swaps++;
                changed = 1;
            }
        }
        passes++;
        if (!changed)
            break;
    }
    int check = 0;
    for (int k = 0; k < n; k++)
        check = check * 3 + data[k];
    return check + swaps * 7 + passes;
}
