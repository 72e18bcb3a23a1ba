#!/usr/bin/env python3
"""Pure-Python mt19937_64 plus the library's uniform/normal transforms.

Prints reference draws used by the unit tests: the 10000th engine output for
the default seed (fixed by the C++ standard), the first uniforms and normals
for a few seeds, and the leading entries of the default codebook's frame
vector.
"""
import math

MASK = (1 << 64) - 1


class MT64:
    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & MASK
        for i in range(1, 312):
            self.mt[i] = (6364136223846793005 * (self.mt[i - 1] ^ (self.mt[i - 1] >> 62)) + i) & MASK
        self.i = 312

    def next(self):
        if self.i >= 312:
            for k in range(312):
                y = (self.mt[k] & 0xFFFFFFFF80000000) | (self.mt[(k + 1) % 312] & 0x7FFFFFFF)
                x = self.mt[(k + 156) % 312] ^ (y >> 1)
                if y & 1:
                    x ^= 0xB5026F5AA96619E9
                self.mt[k] = x
            self.i = 0
        y = self.mt[self.i]
        self.i += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & MASK


class Source:
    def __init__(self, seed):
        self.e = MT64(seed)
        self.spare = None

    def uniform(self):
        return (self.e.next() >> 11) * 2.0 ** -53

    def normal(self):
        if self.spare is not None:
            s, self.spare = self.spare, None
            return s
        while True:
            u = 2.0 * self.uniform() - 1.0
            v = 2.0 * self.uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                break
        scale = math.sqrt(-2.0 * math.log(s) / s)
        self.spare = v * scale
        return u * scale


def main():
    e = MT64(5489)
    for _ in range(9999):
        e.next()
    print("mt19937_64(5489) #10000:", e.next())
    for seed in (1, 42):
        s = Source(seed)
        print(f"seed {seed} uniforms:", [repr(s.uniform()) for _ in range(3)])
        s = Source(seed)
        print(f"seed {seed} normals:", [repr(s.normal()) for _ in range(4)])
    s = Source(300369)
    sd = 1.0 / math.sqrt(300)
    print("default frame[0:4]:", [repr(sd * s.normal()) for _ in range(4)])


if __name__ == "__main__":
    main()
