#define LEN 8

enum Direction { LEFT, RIGHT, MIRROR };

int cyclic_rotation(int data[LEN], int steps, int dir) {
    int out[LEN];
    for (int i = 0; i < LEN; i++)
        out[i] = data[i];
    enum Direction d = (enum Direction)dir;
    for (int s = 0; s < steps; s++) {
        int tmp[LEN];
        for (int i = 0; i < LEN; i++) {
            switch (d) {
            case LEFT:
                tmp[i] = out[(i + 1) % LEN];
                break;
            case RIGHT:
                tmp[i] = out[(i + LEN - 1) % LEN];
                break;
            default:
                break;
            }
        }
        if (d != MIRROR)
            for (int i = 0; i < LEN; i++)
                out[i] = tmp[i];
    }
    int code = 0;
    for (int i = 0; i < LEN; i++)
        code = code * 5 + out[i];
    return code;
}
