#define BUCKETS 8
#define CAPACITY 32

struct Entry {
    int key;
    int value;
    struct Entry *next;
};

struct Entry pool[CAPACITY];
struct Entry *buckets[BUCKETS];
int used;

int bucket_of(int key) {
    return (key * 7 + 3) % BUCKETS;
}

struct Entry *find(int key) {
    struct Entry *e = buckets[bucket_of(key)];
    while (e != 0) {
        if (e->key == key)
            return e;
        e = e->next;
    }
    return 0;
}

void put(int key, int value) {
    struct Entry *e = find(key);
    if (e != 0) {
        e->value += value;
        return;
    }
    e = &pool[used];
    used++;
    e->key = key;
    e->value = value;
    e->next = buckets[bucket_of(key)];
    buckets[bucket_of(key)] = e;
}

int hash_table(int keys[16], int n) {
    used = 0;
    for (int b = 0; b < BUCKETS; b++)
        buckets[b] = 0;
    for (int i = 0; i < n; i++)
        put(keys[i], i + 1);
    int score = 0;
    for (int b = 0; b < BUCKETS; b++) {
        int depth = 1;
        for (struct Entry *e = buckets[b]; e != 0; e = e->next) {
            score += e->key * e->value * depth;
            depth++;
        }
    }
    return score + used;
}
