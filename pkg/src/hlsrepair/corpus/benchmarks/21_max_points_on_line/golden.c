#define PTS 8

int gcd(int a, int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int max_points_on_line(int xs[PTS], int ys[PTS], int n) {
    int best = n < 2 ? n : 1;
    for (int i = 0; i < n; i++) {
        int dx_seen[PTS];
        int dy_seen[PTS];
        int count[PTS];
        int kinds = 0;
        int same = 0;
        for (int j = i + 1; j < n; j++) {
            int dx = xs[j] - xs[i];
            int dy = ys[j] - ys[i];
            if (dx == 0 && dy == 0) {
                same++;
                continue;
            }
            int g = gcd(dx, dy);
            dx /= g;
            dy /= g;
            if (dx < 0 || (dx == 0 && dy < 0)) {
                dx = -dx;
                dy = -dy;
            }
            int k = 0;
            while (k < kinds && !(dx_seen[k] == dx && dy_seen[k] == dy))
                k++;
            if (k == kinds) {
                dx_seen[k] = dx;
                dy_seen[k] = dy;
                count[k] = 0;
                kinds++;
            }
            count[k]++;
        }
        int local = 0;
        for (int k = 0; k < kinds; k++)
            if (count[k] > local)
                local = count[k];
        if (local + same + 1 > best)
            best = local + same + 1;
    }
    return best;
}
