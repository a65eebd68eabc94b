#define BUCKETS 8
#define CAPACITY 32
#define NIL -1

struct Entry {
    int key;
    int value;
    int next;
};

struct Entry pool[CAPACITY];
int buckets[BUCKETS];
int used;

int bucket_of(int key) {
    return (key * 7 + 3) % BUCKETS;
}

int find(int key) {
    int e = buckets[bucket_of(key)];
    while (e != NIL) {
        if (pool[e].key == key)
            return e;
        e = pool[e].next;
    }
    return NIL;
}

void put(int key, int value) {
    int e = find(key);
    if (e != NIL) {
        pool[e].value += value;
        return;
    }
    e = used;
    used++;
    pool[e].key = key;
    pool[e].value = value;
    pool[e].next = buckets[bucket_of(key)];
    buckets[bucket_of(key)] = e;
}

int hash_table(int keys[16], int n) {
    used = 0;
    for (int b = 0; b < BUCKETS; b++)
        buckets[b] = NIL;
    for (int i = 0; i < n; i++)
        put(keys[i], i + 1);
    int score = 0;
    for (int b = 0; b < BUCKETS; b++) {
        int depth = 1;
        for (int e = buckets[b]; e != NIL; e = pool[e].next) {
            score += pool[e].key * pool[e].value * depth;
            depth++;
        }
    }
    return score + used;
}
