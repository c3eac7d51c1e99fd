# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled implementations of the hot loops.

Must stay operation-for-operation identical to ``_pure.py`` so that both
backends produce bit-identical results; see ``tests/test_kernels.py``.
"""


def score_document(const double[::1] log_priors, const double[::1] log_lik,
                   const double[::1] oov_log_lik, const long long[::1] token_ids,
                   const double[::1] token_counts, double oov_count,
                   bint skip_oov, double[::1] out):
    """Accumulate per-class log scores for one document (see _pure twin)."""
    cdef Py_ssize_t n_classes = log_priors.shape[0]
    cdef Py_ssize_t vocab_size = log_lik.shape[0] // n_classes if n_classes else 0
    cdef Py_ssize_t n_tokens = token_ids.shape[0]
    cdef Py_ssize_t j, k, base
    cdef double score
    for j in range(n_classes):
        score = log_priors[j]
        if not skip_oov and oov_count != 0.0:
            score += oov_count * oov_log_lik[j]
        base = j * vocab_size
        for k in range(n_tokens):
            score += token_counts[k] * log_lik[base + token_ids[k]]
        out[j] = score


def strip_non_letters(str text):
    """Replace non-letter characters with spaces, collapse runs, trim."""
    cdef list chars = []
    cdef bint pending = False
    cdef Py_UCS4 ch
    for ch in text:
        if ch.isalpha():
            if pending and chars:
                chars.append(" ")
            pending = False
            chars.append(ch)
        else:
            pending = True
    return "".join(chars)
