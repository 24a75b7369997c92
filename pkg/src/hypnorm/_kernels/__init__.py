"""Batch word-arithmetic kernels, with backend selection at import time.

Two interchangeable backends implement the hot loops (all pair products of
word batches, distance tables, quotient lengths):

* ``hypnorm._kernels._ck`` — Cython extension, built by setup.py when a
  compiler is available;
* ``hypnorm._kernels.pure`` — pure Python, always available.

The compiled backend is preferred when importable.  Set the environment
variable ``HYPNORM_KERNEL=pure`` or ``HYPNORM_KERNEL=compiled`` to force a
choice (forcing ``compiled`` raises if the extension is missing).  Both
backends produce identical outputs, including emission order; the test
suite cross-checks them and ``benchmarks/bench_kernels.py`` compares their
speed.

API (group ``spec`` is ``("free", rank)`` or ``("zfp", orders_tuple)``;
words are reduced syllable tuples):

- ``product_sphere_hits(spec, lefts, rights, target_len)``
- ``product_ball_hits(spec, lefts, rights, radius)``
- ``distance_table(spec, words)``
- ``left_quotient_lengths(spec, words, y)``
- ``sphere_rank(spec, word)``
"""

from __future__ import annotations

import os

_forced = os.environ.get("HYPNORM_KERNEL", "").strip().lower()

if _forced == "pure":
    from . import pure as _impl
elif _forced == "compiled":
    from . import _ck as _impl  # ImportError here means the extension is absent
else:
    try:
        from . import _ck as _impl
    except ImportError:
        from . import pure as _impl

BACKEND = _impl.BACKEND_NAME

product_sphere_hits = _impl.product_sphere_hits
product_ball_hits = _impl.product_ball_hits
distance_table = _impl.distance_table
left_quotient_lengths = _impl.left_quotient_lengths
sphere_rank = _impl.sphere_rank
