# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the pure-Python search kernels.

Keeps identical semantics and iteration order; state subsets stay
arbitrary-precision Python ints so component size is unbounded. The win
comes from compiled loop and dict machinery on the hot paths.
"""

from collections import deque

LEFT_ONLY = 1
RIGHT_ONLY = 2
LEFT_FEEDS_RIGHT = 3
RIGHT_FEEDS_LEFT = 4

NO_LABEL = -1


def product_closure(enc1, enc2, composed_inputs):
    cdef int src, dst, s1, s2, t1, t2, i, o, i2, o2, i1, o1
    in1 = enc1.input_ids
    in2 = enc2.input_ids
    trans1 = enc1.trans
    trans2 = enc2.trans

    start = (enc1.initial, enc2.initial)
    pair_index = {start: 0}
    pairs = [start]
    queue = deque([start])
    transitions = []

    while queue:
        pair = queue.popleft()
        s1 = pair[0]
        s2 = pair[1]
        src = pair_index[pair]
        found = []

        for (i, o, t1) in trans1[s1]:
            if i not in composed_inputs:
                continue
            if o not in in2:
                found.append((i, o, t1, s2, LEFT_ONLY, NO_LABEL))
            else:
                for (i2, o2, t2) in trans2[s2]:
                    if i2 == o:
                        found.append((i, o2, t1, t2, LEFT_FEEDS_RIGHT, o))
        for (i, o, t2) in trans2[s2]:
            if i not in composed_inputs:
                continue
            if o not in in1:
                found.append((i, o, s1, t2, RIGHT_ONLY, NO_LABEL))
            else:
                for (i1, o1, t1) in trans1[s1]:
                    if i1 == o:
                        found.append((i, o1, t1, t2, RIGHT_FEEDS_LEFT, o))

        found.sort()
        for entry in found:
            dst_pair = (entry[2], entry[3])
            cached = pair_index.get(dst_pair)
            if cached is None:
                dst = len(pairs)
                pair_index[dst_pair] = dst
                pairs.append(dst_pair)
                queue.append(dst_pair)
            else:
                dst = cached
            transitions.append((src, entry[0], entry[1], dst, entry[4], entry[5]))

    return pairs, transitions


cdef list _bits(mask):
    cdef int n = 0
    out = []
    while mask:
        if mask & 1:
            out.append(n)
        mask >>= 1
        n += 1
    return out


cdef dict _aggregate(enc, mask):
    cdef dict steps = {}
    step_targets = enc.step_targets
    for s in _bits(mask):
        for io, targets in (<dict>step_targets[s]).items():
            prev = steps.get(io)
            steps[io] = targets if prev is None else prev | targets
    return steps


cdef set _outs_for(enc, mask, int i):
    cdef set outs = set()
    outs_by_input = enc.outs_by_input
    for s in _bits(mask):
        got = (<dict>outs_by_input[s]).get(i)
        if got is not None:
            outs.update(got)
    return outs


cdef list _witness(dict seen, key):
    path = []
    while True:
        prev = seen[key]
        if prev is None:
            break
        key = prev[0]
        path.append(prev[1])
    path.reverse()
    return path


def cioco_bfs(enc_iut, enc_spec, input_ids, bint strict):
    cdef int depth, explored = 0, max_depth = 0, i
    inputs = sorted(input_ids)
    start = ((1 << enc_iut.initial), (1 << enc_spec.initial))
    cdef dict seen = {start: None}
    queue = deque([(start, 0)])

    while queue:
        item = queue.popleft()
        pair = item[0]
        depth = item[1]
        qi = pair[0]
        qs = pair[1]
        explored += 1
        if depth > max_depth:
            max_depth = depth

        for i in inputs:
            iut_outs = _outs_for(enc_iut, qi, i)
            if not iut_outs:
                continue
            spec_outs = _outs_for(enc_spec, qs, i)
            if not spec_outs and not strict:
                continue
            if not iut_outs <= spec_outs:
                offending = min(iut_outs - spec_outs)
                witness = _witness(seen, pair)
                ce = (witness, i, offending, frozenset(iut_outs), frozenset(spec_outs))
                return ce, (explored, max_depth)

        iut_steps = _aggregate(enc_iut, qi)
        spec_steps = _aggregate(enc_spec, qs)
        common = sorted(set(iut_steps) & set(spec_steps))
        for io in common:
            nxt = (iut_steps[io], spec_steps[io])
            if nxt not in seen:
                seen[nxt] = (pair, io)
                queue.append((nxt, depth + 1))

    return None, (explored, max_depth)


def inclusion_bfs(enc1, enc2):
    cdef int depth, explored = 0, max_depth = 0
    start = ((1 << enc1.initial), (1 << enc2.initial))
    cdef dict seen = {start: None}
    queue = deque([(start, 0)])

    while queue:
        item = queue.popleft()
        pair = item[0]
        depth = item[1]
        q1 = pair[0]
        q2 = pair[1]
        explored += 1
        if depth > max_depth:
            max_depth = depth

        steps1 = _aggregate(enc1, q1)
        steps2 = _aggregate(enc2, q2)
        for io in sorted(steps1):
            if io not in steps2:
                witness = _witness(seen, pair)
                ce = (
                    witness,
                    io[0],
                    io[1],
                    frozenset(_outs_for(enc1, q1, io[0])),
                    frozenset(_outs_for(enc2, q2, io[0])),
                )
                return ce, (explored, max_depth)
            nxt = (steps1[io], steps2[io])
            if nxt not in seen:
                seen[nxt] = (pair, io)
                queue.append((nxt, depth + 1))

    return None, (explored, max_depth)
