"""Pure-Python bitmask evaluator; mirrors ``_evalcore.pyx`` line for line.

A program is a flat postfix list of opcodes (see ``evalcore.OPS``);
``ATOM`` is followed by the atom index. Worlds are bits of an int.
"""

ATOM, NOT, AND, OR, IMP, IFF, BOX, DIA, PALL, PEX, FALL, FEX, TOP, BOT = range(14)


def _modal(rel, a, n, universal):
    out = 0
    for w in range(n):
        r = rel[w]
        if universal:
            if r & ~a == 0:
                out |= 1 << w
        elif r & a:
            out |= 1 << w
    return out


def eval_mask(prog, n, succ, past, fut, atoms):
    full = (1 << n) - 1
    stack = []
    push, pop = stack.append, stack.pop
    i, plen = 0, len(prog)
    while i < plen:
        op = prog[i]
        if op == ATOM:
            i += 1
            push(atoms[prog[i]])
        elif op == NOT:
            push(full & ~pop())
        elif op == AND:
            b = pop()
            push(pop() & b)
        elif op == OR:
            b = pop()
            push(pop() | b)
        elif op == IMP:
            b = pop()
            push((full & ~pop()) | b)
        elif op == IFF:
            b = pop()
            push(full & ~(pop() ^ b))
        elif op == BOX:
            push(_modal(succ, pop(), n, True))
        elif op == DIA:
            push(_modal(succ, pop(), n, False))
        elif op == PALL:
            push(_modal(past, pop(), n, True))
        elif op == PEX:
            push(_modal(past, pop(), n, False))
        elif op == FALL:
            push(_modal(fut, pop(), n, True))
        elif op == FEX:
            push(_modal(fut, pop(), n, False))
        elif op == TOP:
            push(full)
        elif op == BOT:
            push(0)
        else:
            raise ValueError(f"bad opcode {op}")
        i += 1
    return pop()


def scan_valuations(prog, n, succ, past, fut, n_atoms, want_sat):
    """First valuation index that falsifies somewhere (``want_sat`` false)
    or satisfies somewhere (``want_sat`` true); -1 if none.

    Valuation ``v`` gives atom ``i`` the world mask ``(v >> i*n) & full``.
    """
    full = (1 << n) - 1
    total = 1 << (n_atoms * n)
    for v in range(total):
        atoms = [(v >> (i * n)) & full for i in range(n_atoms)]
        m = eval_mask(prog, n, succ, past, fut, atoms)
        if want_sat:
            if m:
                return v
        elif m != full:
            return v
    return -1
