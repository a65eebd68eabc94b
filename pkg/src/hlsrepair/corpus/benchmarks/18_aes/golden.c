/* A four-byte toy round built from AES steps: SubBytes uses a 16-entry
   nibble box, MixColumns uses xtime. */

const int sbox[16] = {
    0x6, 0x4, 0xC, 0x5, 0x0, 0x7, 0x2, 0xE,
    0x1, 0xF, 0x3, 0xD, 0x8, 0xA, 0x9, 0xB
};

int sub_byte(int b) {
    return (sbox[(b >> 4) & 15] << 4) | sbox[b & 15];
}

int xtime(int b) {
    int r = (b << 1) & 0xFF;
    if (b & 0x80)
        r ^= 0x1B;
    return r;
}

int aes(int block[4], int key, int rounds) {
    int s[4];
    for (int i = 0; i < 4; i++)
        s[i] = (block[i] ^ (key >> (8 * i))) & 0xFF;
    for (int r = 0; r < rounds; r++) {
        int step = r % 3;
        switch (step) {
        case 0:
            for (int i = 0; i < 4; i++)
                s[i] = sub_byte(s[i]);
            break;
        case 1: {
            int t = s[0];
            s[0] = s[1];
            s[1] = s[2];
            s[2] = s[3];
            s[3] = t;
            break;
        }
        case 2: {
            int a0 = s[0], a1 = s[1], a2 = s[2], a3 = s[3];
            s[0] = xtime(a0) ^ xtime(a1) ^ a1 ^ a2 ^ a3;
            s[1] = a0 ^ xtime(a1) ^ xtime(a2) ^ a2 ^ a3;
            s[2] = a0 ^ a1 ^ xtime(a2) ^ xtime(a3) ^ a3;
            s[3] = xtime(a0) ^ a0 ^ a1 ^ a2 ^ xtime(a3);
            break;
        }
        default:
            break;
        }
        for (int i = 0; i < 4; i++)
            s[i] ^= (key >> ((i + r) % 4 * 8)) & 0xFF;
    }
    return ((s[0] & 0x7F) << 24) | (s[1] << 16) | (s[2] << 8) | s[3];
}
