#define DIM 3

int isqrt(int v) {
    int r = 0;
    while ((r + 1) * (r + 1) <= v)
        r++;
    return r;
}

/* Integer Gram-Schmidt: Q is scaled by 64, R holds the column norms and
   projections. */
int qr_decomposition(int a[DIM * DIM]) {
    int q[DIM][DIM];
    int r[DIM][DIM];
    int v[DIM];
    for (int i = 0; i < DIM; i++)
        for (int j = 0; j < DIM; j++)
            r[i][j] = 0;
    for (int j = 0; j < DIM; j++) {
        for (int i = 0; i < DIM; i++)
            v[i] = a[i * DIM + j] * 64;
        for (int k = 0; k < j; k++) {
            int dot = 0;
            for (int i = 0; i < DIM; i++)
                dot += q[i][k] * a[i * DIM + j];
            r[k][j] = dot / 64;
            for (int i = 0; i < DIM; i++)
                v[i] -= q[i][k] * dot / 64;
        }
        int norm2 = 0;
        for (int i = 0; i < DIM; i++)
            norm2 += (v[i] / 8) * (v[i] / 8);
        int norm = isqrt(norm2);
        r[j][j] = norm;
        for (int i = 0; i < DIM; i++)
            q[i][j] = norm != 0 ? v[i] * 8 / norm : 0;
    }
    int sig = 0;
    for (int i = 0; i < DIM; i++)
        for (int j = 0; j < DIM; j++)
            sig = sig * 3 + q[i][j] + r[i][j];
    return sig;
}
