#define VARIANT_PLAIN 0
#define VARIANT_LUCAS 1
#define VARIANT_TRIB 2

int fibonacci_sequence(int n, int variant) {
    int a = 0;
    int b = 1;
    int c = 1;
    switch (variant) {
    case VARIANT_PLAIN:
        a = 0;
        b = 1;
        break;
    case VARIANT_LUCAS:
        a = 2;
        b = 1;
        break;
    case VARIANT_TRIB:
        a = 0;
        b = 0;
        c = 1;
        break;
    }
    for (int i = 0; i < n; i++) {
        int next;
        switch (variant) {
        case VARIANT_TRIB:
            next = (a + b + c) % 100003;
            a = b;
            b = c;
            c = next;
            break;
        case VARIANT_PLAIN:
        case VARIANT_LUCAS:
            next = (a + b) % 100003;
            a = b;
            b = next;
            break;
        }
    }
    return a * 7 + b;
}
