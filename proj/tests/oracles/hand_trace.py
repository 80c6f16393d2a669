#!/usr/bin/env python3
"""Straight-line trace of the two-pass preprocessing on a 3x3 all-zero image.

Written independently of the C++ sources; its printed grids are frozen into
tests/test_preprocess.cpp and the acceptance suite.
"""


def predict(img, i, j):
    h, w = len(img), len(img[0])
    vals = [img[a][b] for a, b in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1))
            if 0 <= a < h and 0 <= b < w]
    s, k = sum(vals), len(vals)
    # nearest integer, ties away from zero
    q = (abs(s) * 2 + k) // (2 * k)
    return q if s >= 0 else -q


def forward(o, T, t0, t1):
    h, w = len(o), len(o[0])
    x0 = [row[:] for row in o]
    for i in range(h):
        for j in range(w):
            if (i + j) % 2 == 0:
                p = predict(o, i, j)
                if p < t0:
                    x0[i][j] = o[i][j] + T
                elif p > 255 - t0:
                    x0[i][j] = o[i][j] - T
    x1 = [row[:] for row in x0]
    for i in range(h):
        for j in range(w):
            if (i + j) % 2 == 1:
                p = predict(x0, i, j)
                if p < t1:
                    x1[i][j] = x0[i][j] + T
                elif p > 255 - t1:
                    x1[i][j] = x0[i][j] - T
    x = [[min(max(v, T), 255 - T) for v in row] for row in x1]
    l = [[v + T if v < T else (255 + T - v if v > 255 - T else 2 * T) for v in row] for row in x1]
    return x0, x1, x, l


def inverse(x, l, T, t0, t1):
    h, w = len(x), len(x[0])
    x1 = [[x[i][j] if l[i][j] == 2 * T else (l[i][j] - T if x[i][j] == T else 255 + T - l[i][j])
           for j in range(w)] for i in range(h)]
    x0 = [row[:] for row in x1]
    for i in range(h):
        for j in range(w):
            if (i + j) % 2 == 1:
                p = predict(x1, i, j)
                if p < t1:
                    x0[i][j] = x1[i][j] - T
                elif p > 255 - t1:
                    x0[i][j] = x1[i][j] + T
    o = [row[:] for row in x0]
    for i in range(h):
        for j in range(w):
            if (i + j) % 2 == 0:
                p = predict(x0, i, j)
                if p < t0:
                    o[i][j] = x0[i][j] - T
                elif p > 255 - t0:
                    o[i][j] = x0[i][j] + T
    return o


if __name__ == "__main__":
    zero = [[0] * 3 for _ in range(3)]
    for t0, t1 in ((1, 1), (1, 4)):
        x0, x1, x, l = forward(zero, 1, t0, t1)
        o = inverse(x, l, 1, t0, t1)
        print(f"T=1 t0={t0} t1={t1}")
        print("  X0 ", x0)
        print("  X1 ", x1)
        print("  X  ", x)
        print("  L  ", l)
        print("  boundary_after", sum(v != 2 for row in l for v in row))
        print("  inverse", o)
