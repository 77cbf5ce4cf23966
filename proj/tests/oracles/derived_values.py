#!/usr/bin/env python3
"""Independent oracle for the frozen expected values used by the C++ tests.

Evaluates the window entropy, event scans, cooc, graph entropy, tf-idf, RAKE
and paired t-test formulas by direct enumeration with Python floats and
scipy.  Run it to regenerate the numbers pasted into the test sources.
"""
import math
from scipy import stats


def windows(counts, width):
    n = len(counts)
    return [sum(counts[i:min(i + width, n)]) for i in range(0, n, width)]


def h_a(counts, width, log=math.log2):
    w = windows(counts, width)
    total = sum(w)
    return -sum((c / total) * log(c / total) for c in w if c)


def curve(counts):
    return {dt: h_a(counts, dt) for dt in range(1, len(counts))}


def events(cv, theta, mode):
    out = []
    for dt in range(3, len(cv) + 1):
        cur, prev = cv[dt], cv[dt - 1]
        if mode == "increase" and cur - prev > theta:
            out.append(dt)
        if mode == "drop" and prev - cur > theta:
            out.append(dt)
        if mode == "plateau" and prev - cur > theta and abs(cv[dt - 2] - prev) <= theta:
            out.append(dt)
    return out


def main():
    print("h_a [2,1,0,0,0,1,0,0] dt=1:", repr(h_a([2, 1, 0, 0, 0, 1, 0, 0], 1)))

    n = 64
    double = [1 if (0 <= i <= 3 or 40 <= i <= 43) else 0 for i in range(n)]
    cv = curve(double)
    theta = cv[1] / n
    print("double island theta:", repr(theta))
    print("double island H_A(4,5,6):", cv[4], cv[5], cv[6])
    print("double island H_A(43,44):", repr(cv[43]), cv[44])
    for mode in ("increase", "drop", "plateau"):
        ev = events(cv, theta, mode)
        print(f"double island {mode}: events={ev} max={max(ev) if ev else None}")

    uniform = [1] * n
    cu = curve(uniform)
    incr = [dt for dt in range(2, n) if cu[dt] > cu[dt - 1] + 1e-15]
    print("uniform increases:", incr)
    tu = cu[1] / n
    for mode in ("increase", "drop", "plateau"):
        ev = events(cu, tu, mode)
        print(f"uniform {mode}: events={ev} max={max(ev) if ev else None}")

    print("cooc toy:", 2 / max(3, 2))
    print("cosine {a,b} vs {a,b,c}:", 2 / math.sqrt(2 * 3))
    p = [3 / 4, 1 / 4]
    print("H_B(3,1):", repr(-sum(x * math.log2(x) for x in p)))
    print("tfidf 3*log2(4/1):", 3 * math.log2(4 / 1))

    d = [-1, -2, -1, -3, -2]
    m = len(d)
    mean = sum(d) / m
    sd = math.sqrt(sum((x - mean) ** 2 for x in d) / (m - 1))
    t = mean / (sd / math.sqrt(m))
    print("t-test d:", repr(t), "p:", repr(stats.t.cdf(t, m - 1)))
    r = stats.ttest_rel([x for x in d], [0] * m, alternative="less")
    print("scipy ttest_rel:", r.statistic, r.pvalue)


if __name__ == "__main__":
    main()
