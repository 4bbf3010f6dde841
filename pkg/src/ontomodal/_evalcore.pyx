# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask evaluator; semantics identical to ``_evalcore_py``."""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport uint64_t

cdef enum:
    STACK = 512

cdef enum:
    ATOM = 0
    NOT = 1
    AND = 2
    OR = 3
    IMP = 4
    IFF = 5
    BOX = 6
    DIA = 7
    PALL = 8
    PEX = 9
    FALL = 10
    FEX = 11
    TOP = 12
    BOT = 13


cdef inline uint64_t _modal(uint64_t* rel, uint64_t a, int n, bint universal) nogil:
    cdef uint64_t out = 0
    cdef int w
    for w in range(n):
        if universal:
            if rel[w] & ~a == 0:
                out |= (<uint64_t>1) << w
        elif rel[w] & a:
            out |= (<uint64_t>1) << w
    return out


cdef int _run(int* prog, int plen, int n, uint64_t* succ, uint64_t* past,
              uint64_t* fut, uint64_t* atoms, uint64_t* out) nogil:
    cdef uint64_t stack[STACK]
    cdef int sp = 0, i = 0, op
    cdef uint64_t full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>(-1)
    cdef uint64_t b
    while i < plen:
        op = prog[i]
        if op == ATOM:
            i += 1
            if sp >= STACK:
                return -1
            stack[sp] = atoms[prog[i]]
            sp += 1
        elif op == TOP or op == BOT:
            if sp >= STACK:
                return -1
            stack[sp] = full if op == TOP else 0
            sp += 1
        elif op == NOT:
            stack[sp - 1] = full & ~stack[sp - 1]
        elif op == BOX:
            stack[sp - 1] = _modal(succ, stack[sp - 1], n, True)
        elif op == DIA:
            stack[sp - 1] = _modal(succ, stack[sp - 1], n, False)
        elif op == PALL:
            stack[sp - 1] = _modal(past, stack[sp - 1], n, True)
        elif op == PEX:
            stack[sp - 1] = _modal(past, stack[sp - 1], n, False)
        elif op == FALL:
            stack[sp - 1] = _modal(fut, stack[sp - 1], n, True)
        elif op == FEX:
            stack[sp - 1] = _modal(fut, stack[sp - 1], n, False)
        else:
            sp -= 1
            b = stack[sp]
            if op == AND:
                stack[sp - 1] = stack[sp - 1] & b
            elif op == OR:
                stack[sp - 1] = stack[sp - 1] | b
            elif op == IMP:
                stack[sp - 1] = (full & ~stack[sp - 1]) | b
            elif op == IFF:
                stack[sp - 1] = full & ~(stack[sp - 1] ^ b)
            else:
                return -2
        i += 1
    out[0] = stack[sp - 1]
    return 0



cdef int _load(list prog, int** out_prog) except -1:
    cdef int k, plen = len(prog)
    cdef int* p = <int*>PyMem_Malloc(sizeof(int) * (plen + 1))
    if p == NULL:
        raise MemoryError()
    for k in range(plen):
        p[k] = prog[k]
    out_prog[0] = p
    return plen


cdef void _rels(object src, uint64_t* dst, int n):
    cdef int w
    for w in range(n):
        dst[w] = src[w]


def eval_mask(prog, int n, succ, past, fut, atoms):
    cdef int* p = NULL
    cdef int plen = _load(list(prog), &p)
    cdef uint64_t s[64]
    cdef uint64_t pa[64]
    cdef uint64_t fu[64]
    cdef uint64_t at[64]
    cdef uint64_t out = 0
    cdef int rc, k
    if n > 63 or len(atoms) > 64:
        PyMem_Free(p)
        raise ValueError("at most 63 worlds and 64 atoms")
    _rels(succ, s, n)
    _rels(past, pa, n)
    _rels(fut, fu, n)
    for k in range(len(atoms)):
        at[k] = atoms[k]
    rc = _run(p, plen, n, s, pa, fu, at, &out)
    PyMem_Free(p)
    if rc != 0:
        raise ValueError("malformed program")
    return out


def scan_valuations(prog, int n, succ, past, fut, int n_atoms, bint want_sat):
    cdef int* p = NULL
    cdef int plen = _load(list(prog), &p)
    cdef uint64_t s[64]
    cdef uint64_t pa[64]
    cdef uint64_t fu[64]
    cdef uint64_t at[64]
    cdef uint64_t out = 0, v, total
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef int rc = 0, k
    cdef long long found = -1
    if n > 63 or n_atoms > 64 or n_atoms * n > 62:
        PyMem_Free(p)
        raise ValueError("valuation space too large")
    _rels(succ, s, n)
    _rels(past, pa, n)
    _rels(fut, fu, n)
    total = (<uint64_t>1) << (n_atoms * n)
    with nogil:
        v = 0
        while v < total:
            for k in range(n_atoms):
                at[k] = (v >> (k * n)) & full
            rc = _run(p, plen, n, s, pa, fu, at, &out)
            if rc != 0:
                break
            if want_sat:
                if out != 0:
                    found = <long long>v
                    break
            elif out != full:
                found = <long long>v
                break
            v += 1
    PyMem_Free(p)
    if rc != 0:
        raise ValueError("malformed program")
    return found
