"""Independent reference IMA codec used as a test oracle.

Deliberately written as a straight transliteration of the classic
reference routine (running state machine over a flat sample stream, no
block framing) so it shares no code with the package implementation.
"""

REF_INDEX_TABLE = [
    -1, -1, -1, -1, 2, 4, 6, 8,
    -1, -1, -1, -1, 2, 4, 6, 8,
]

REF_STEP_TABLE = [
    7, 8, 9, 10, 11, 12, 13, 14, 16, 17,
    19, 21, 23, 25, 28, 31, 34, 37, 41, 45,
    50, 55, 60, 66, 73, 80, 88, 97, 107, 118,
    130, 143, 157, 173, 190, 209, 230, 253, 279, 307,
    337, 371, 408, 449, 494, 544, 598, 658, 724, 796,
    876, 963, 1060, 1166, 1282, 1411, 1552, 1707, 1878, 2066,
    2272, 2499, 2749, 3024, 3327, 3660, 4026, 4428, 4871, 5358,
    5894, 6484, 7132, 7845, 8630, 9493, 10442, 11487, 12635, 13899,
    15289, 16818, 18500, 20350, 22385, 24623, 27086, 29794, 32767,
]


def reference_encode(samples, predictor=0, index=0):
    """Encode a sample stream; returns (nibbles, trajectory, final state).

    ``trajectory`` holds, per sample, the reconstructed predictor and the
    step size that was active when the sample was quantized.
    """
    codes = []
    trajectory = []
    for sample in samples:
        step = REF_STEP_TABLE[index]
        diff = int(sample) - predictor
        sign = 8 if diff < 0 else 0
        if sign:
            diff = -diff

        delta = 0
        vpdiff = step >> 3
        if diff >= step:
            delta = 4
            diff -= step
            vpdiff += step
        step >>= 1
        if diff >= step:
            delta |= 2
            diff -= step
            vpdiff += step
        step >>= 1
        if diff >= step:
            delta |= 1
            vpdiff += step

        if sign:
            predictor -= vpdiff
        else:
            predictor += vpdiff
        predictor = max(-32768, min(32767, predictor))

        delta |= sign
        index += REF_INDEX_TABLE[delta]
        index = max(0, min(88, index))

        codes.append(delta)
        trajectory.append((predictor, REF_STEP_TABLE[index]))
    return codes, trajectory, (predictor, index)


def reference_decode(codes, predictor=0, index=0):
    """Decode a nibble stream; returns (samples, final state)."""
    out = []
    for delta in codes:
        step = REF_STEP_TABLE[index]
        index += REF_INDEX_TABLE[delta & 0x0F]
        index = max(0, min(88, index))

        sign = delta & 8
        magnitude = delta & 7
        vpdiff = step >> 3
        if magnitude & 4:
            vpdiff += step
        if magnitude & 2:
            vpdiff += step >> 1
        if magnitude & 1:
            vpdiff += step >> 2

        if sign:
            predictor -= vpdiff
        else:
            predictor += vpdiff
        predictor = max(-32768, min(32767, predictor))
        out.append(predictor)
    return out, (predictor, index)


def reference_roundtrip(samples, predictor=0, index=0):
    """Encode then decode; returns the reconstructed stream."""
    codes, _, _ = reference_encode(samples, predictor, index)
    decoded, _ = reference_decode(codes, predictor, index)
    return decoded
