#define W 6
#define H 6

int image[H][W];

int absval(int v) {
    return v < 0 ? -v : v;
}

int edge_detection(int pixels[W * H], int threshold) {
    for (int y = 0; y < H; y++)
        for (int x = 0; x < W; x++)
            image[y][x] = pixels[y * W + x];
    int edges = 0;
    int strongest = 0;
    for (int y = 1; y < H - 1; y++) {
        for (int x = 1; x < W - 1; x++) {
            int gx = image[y - 1][x + 1] + 2 * image[y][x + 1] + image[y + 1][x + 1]
                   - image[y - 1][x - 1] - 2 * image[y][x - 1] - image[y + 1][x - 1];
            int gy = image[y + 1][x - 1] + 2 * image[y + 1][x] + image[y + 1][x + 1]
                   - image[y - 1][x - 1] - 2 * image[y - 1][x] - image[y - 1][x + 1];
            int mag = absval(gx) + absval(gy);
            if (mag > threshold)
                edges++;
            if (mag > strongest)
                strongest = mag;
        }
    }
    return edges * 10000 + strongest;
}
