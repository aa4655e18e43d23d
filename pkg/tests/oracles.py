"""Brute-force reference implementations used by the tests."""


def naive_sa(text):
    return sorted(range(1, len(text) + 1), key=lambda i: text[i - 1:])


def occurrences(text, q):
    m = len(q)
    if m == 0:
        return list(range(1, len(text) + 1))
    return [i for i in range(1, len(text) - m + 2) if text[i - 1:i - 1 + m] == q]


def naive_lcp(a, b):
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    return k


def hamming_positions(text, q, exact_errors=None, max_errors=1):
    out = []
    m = len(q)
    for i in range(1, len(text) - m + 2):
        d = sum(1 for a, b in zip(text[i - 1:i - 1 + m], q) if a != b)
        if (exact_errors is not None and d == exact_errors) or (exact_errors is None and d <= max_errors):
            out.append(i)
    return out


def greedy_lz(s, context=b""):
    """Greedy LZ77 with self-overlap; nearest source among longest copies.

    With a context, parses ``context + NUL + s`` from the start of ``s``
    (inputs must not contain NUL).
    """
    assert b"\0" not in s and b"\0" not in context
    buf = context + b"\0" + s if context else s
    k = len(buf) - len(s)
    n = len(buf)
    out = []
    while k < n:
        length, src = 0, None
        while k + length < n:
            # an occurrence starting before k, allowed to run into k itself
            at = buf.rfind(buf[k:k + length + 1], 0, k + length)
            if at < 0:
                break
            length, src = length + 1, at
        f = k - src if length else 0
        out.append((f, length, buf[k + length] if k + length < n else None))
        k += length + 1
    return out


def phrase_ends(phrases):
    ends, pos = [], 0
    for _, length, c in phrases:
        pos += length + (0 if c is None else 1)
        ends.append(pos)
    return ends


def walk_up_ancestor(parent, weight, u, t):
    path = []
    v = u
    while v != -1:
        path.append(v)
        v = parent[v]
    path.reverse()
    total = 0
    for v in path:
        if parent[v] != -1:
            total += weight[v]
        if total >= t:
            return v
    return None
