"""Operator calculus for the cube category.

A morphism ``I^n -> I^m`` of the cube category is stored as a tuple of length
``m``: entry ``k`` describes coordinate ``k+1`` of the output as either a
source coordinate (a positive integer ``j``, meaning ``t_j``) or a constant 0
or 1.  Positive entries are strictly increasing, which makes the tuple a
normal form: every morphism factors uniquely as a deletion of unused source
axes followed by insertions of constants.

Constants are encoded as negative integers so that tuples stay hashable and
cheap: ``-1`` is the constant 0 and ``-2`` is the constant 1.

Composition is substitution.  The normal form gives, for free, the
factorisation of any operator into cofaces (insert a constant) and
codegeneracies (delete an axis), which is what :func:`apply` walks when it
pushes an operator through a complex whose cells only store codimension-one
faces.
"""

from __future__ import annotations

CONST0 = -1
CONST1 = -2


def const(eps):
    return -1 - eps


def is_const(entry):
    return entry < 0


def const_eps(entry):
    return -1 - entry


def identity(n):
    return tuple(range(1, n + 1))


def coface(m, i, eps):
    """The injection ``I^{m-1} -> I^m`` hitting the face ``t_i = eps``."""
    assert 1 <= i <= m
    out = []
    for k in range(1, m + 1):
        if k < i:
            out.append(k)
        elif k == i:
            out.append(const(eps))
        else:
            out.append(k - 1)
    return tuple(out)


def codegeneracy(n, i):
    """The projection ``I^n -> I^{n-1}`` deleting coordinate ``i``."""
    assert 1 <= i <= n
    return tuple(k for k in range(1, n + 1) if k != i)


def deletion(n, axes):
    """Projection ``I^n -> I^{n-len(axes)}`` deleting the given source axes."""
    axes = frozenset(axes)
    return tuple(k for k in range(1, n + 1) if k not in axes)


def compose(f, g):
    """``f`` then ``g``: the composite ``g . f`` as operators.

    ``f : I^n -> I^m`` (length m), ``g : I^m -> I^p`` (length p); the result
    has length ``p`` and reads source coordinates of ``f``.
    """
    return tuple(e if is_const(e) else f[e - 1] for e in g)


def used_axes(f):
    return tuple(e for e in f if not is_const(e))


def unused_axes(f, n):
    used = set(used_axes(f))
    return tuple(j for j in range(1, n + 1) if j not in used)


def is_pure_deletion(f):
    """True when ``f`` contains no constants (it is then some deletion)."""
    return all(not is_const(e) for e in f)


def first_const(f):
    for k, e in enumerate(f):
        if is_const(e):
            return k
    return None


def check_normal(f, n):
    """Validate the normal-form invariants of ``f`` as a map out of I^n."""
    prev = 0
    for e in f:
        if is_const(e):
            if e not in (CONST0, CONST1):
                raise ValueError(f"bad operator entry {e!r}")
            continue
        if not (prev < e <= n):
            raise ValueError(f"operator {f!r} not normal for source dim {n}")
        prev = e


def wcompose(outer, inner):
    """Compose deletion words: delete ``outer`` first, then ``inner``.

    A word is a sorted tuple of deleted axes.  ``outer`` lives in the source
    dimension, ``inner`` in the dimension left after deleting ``outer``; the
    result is the set of source axes deleted by the composite.
    """
    if not inner:
        return tuple(outer)
    outer = set(outer)
    survivors = []
    j = 1
    need = max(inner)
    while len(survivors) < need:
        if j not in outer:
            survivors.append(j)
        j += 1
    total = outer | {survivors[e - 1] for e in inner}
    return tuple(sorted(total))


def word_insert(word, i):
    """Word of ``s_i`` applied after the deletions in ``word`` (one more axis).

    Both the input and output are sorted deleted-axis tuples; ``i`` is an axis
    index in the *output* dimension (one higher than the input's).
    """
    out = [i]
    for a in word:
        out.append(a if a < i else a + 1)
    return tuple(sorted(out))


def word_strip(word, axes):
    """Remove ``axes`` (a subset of ``word``) and renumber the survivors.

    Returns the word expressed in the dimension left after first deleting
    ``axes``.
    """
    axes = sorted(axes)
    out = []
    for a in word:
        if a in axes:
            continue
        shift = sum(1 for b in axes if b < a)
        out.append(a - shift)
    return tuple(out)


def face_in_word(word, i):
    """Behaviour of face ``d_i`` against the degeneracies in ``word``.

    For a reference ``(c, word)`` of dimension ``n`` and ``1 <= i <= n``:

    * if ``i`` is a deleted axis the face cancels one degeneracy; returns
      ``("cancel", word')`` with ``word'`` the renumbered remaining word;
    * otherwise the face passes through; returns ``("pass", i', word')``
      where ``i'`` is the axis at which the face hits the underlying cell and
      ``word'`` the word renumbered into the face's dimension.
    """
    if i in word:
        return ("cancel", word_strip(word, (i,)))
    inner = i - sum(1 for a in word if a < i)
    new_word = tuple(a if a < i else a - 1 for a in word)
    return ("pass", inner, new_word)
