#!/usr/bin/env python3
"""Regenerates the large benchmark netlists in this directory.

c17.bench is the classic 6-NAND netlist and is checked in verbatim, not
generated. The other five files are stand-in circuits that implement the
documented function class of their ISCAS-85 namesakes (priority interrupt
controller, 32-bit single-error corrector, 8-bit ALU, the NAND-expanded
SEC variant, and a 16-bit SEC/DED unit) at the exact published interface
sizes. Each generator self-checks its netlist against a behavioral model
before writing the file.

Usage: python3 generate.py [outdir]
"""

import random
import sys

# ---------------------------------------------------------------- netlist IR


class Bench:
    def __init__(self, name):
        self.name = name
        self.inputs = []
        self.outputs = []
        self.gates = []  # (out, func, [fanins])
        self.defined = set()

    def inp(self, name):
        assert name not in self.defined, name
        self.defined.add(name)
        self.inputs.append(name)
        return name

    def out(self, name):
        self.outputs.append(name)
        return name

    def gate(self, out, func, *fanins):
        assert out not in self.defined, out
        assert all(f in self.defined for f in fanins), (out, fanins)
        self.defined.add(out)
        self.gates.append((out, func, list(fanins)))
        return out

    # convenience wrappers
    def AND(self, out, *f):
        return self.gate(out, "AND", *f)

    def OR(self, out, *f):
        return self.gate(out, "OR", *f)

    def NAND(self, out, *f):
        return self.gate(out, "NAND", *f)

    def NOR(self, out, *f):
        return self.gate(out, "NOR", *f)

    def NOT(self, out, f):
        return self.gate(out, "NOT", f)

    def BUFF(self, out, f):
        return self.gate(out, "BUFF", f)

    def XOR(self, out, *f):
        return self.gate(out, "XOR", *f)

    def XNOR(self, out, *f):
        return self.gate(out, "XNOR", *f)

    def xor_tree(self, prefix, signals):
        """Balanced tree of 2-input XORs; returns the root signal."""
        level = list(signals)
        n = 0
        while len(level) > 1:
            nxt = []
            for i in range(0, len(level) - 1, 2):
                nxt.append(self.XOR(f"{prefix}x{n}", level[i], level[i + 1]))
                n += 1
            if len(level) % 2:
                nxt.append(level[-1])
            level = nxt
        return level[0]

    def expand_xors(self):
        """Rewrite every 2-input XOR/XNOR into the 4/5-NAND form."""
        new_gates = []
        k = 0
        for out, func, fi in self.gates:
            if func in ("XOR", "XNOR") and len(fi) == 2:
                a, b = fi
                n1 = f"{out}_n{k}"
                n2 = f"{out}_n{k + 1}"
                n3 = f"{out}_n{k + 2}"
                k += 3
                new_gates.append((n1, "NAND", [a, b]))
                new_gates.append((n2, "NAND", [a, n1]))
                new_gates.append((n3, "NAND", [b, n1]))
                if func == "XOR":
                    new_gates.append((out, "NAND", [n2, n3]))
                else:
                    n4 = f"{out}_n{k}"
                    k += 1
                    new_gates.append((n4, "NAND", [n2, n3]))
                    new_gates.append((out, "NOT", [n4]))
            else:
                assert func not in ("XOR", "XNOR") or len(fi) == 2
                new_gates.append((out, func, fi))
        self.gates = new_gates

    def evaluate(self, invec):
        """invec: dict name->0/1. Returns dict of all signal values."""
        val = dict(invec)
        pending = list(self.gates)
        while pending:
            rest = []
            for out, func, fi in pending:
                if all(f in val for f in fi):
                    bits = [val[f] for f in fi]
                    if func == "AND":
                        v = int(all(bits))
                    elif func == "NAND":
                        v = int(not all(bits))
                    elif func == "OR":
                        v = int(any(bits))
                    elif func == "NOR":
                        v = int(not any(bits))
                    elif func == "XOR":
                        v = sum(bits) & 1
                    elif func == "XNOR":
                        v = (sum(bits) & 1) ^ 1
                    elif func == "NOT":
                        v = bits[0] ^ 1
                    elif func == "BUFF":
                        v = bits[0]
                    else:
                        raise ValueError(func)
                    val[out] = v
                else:
                    rest.append((out, func, fi))
            assert len(rest) < len(pending), "combinational cycle"
            pending = rest
        return val

    def write(self, path, headline):
        with open(path, "w") as f:
            f.write(f"# {self.name}\n")
            f.write(f"# {headline}\n")
            f.write(f"# {len(self.inputs)} inputs\n")
            f.write(f"# {len(self.outputs)} outputs\n")
            f.write(f"# {len(self.gates)} gates\n")
            f.write("\n")
            for s in self.inputs:
                f.write(f"INPUT({s})\n")
            f.write("\n")
            for s in self.outputs:
                f.write(f"OUTPUT({s})\n")
            f.write("\n")
            for out, func, fi in self.gates:
                f.write(f"{out} = {func}({', '.join(fi)})\n")
        print(f"wrote {path}: {len(self.inputs)} in, {len(self.outputs)} out, "
              f"{len(self.gates)} gates")


# ------------------------------------------------------------------- c432


def gen_c432():
    """27-channel priority interrupt controller, 36 inputs / 7 outputs."""
    b = Bench("c432")
    A = [b.inp(f"A{i}") for i in range(9)]
    B = [b.inp(f"B{i}") for i in range(9)]
    C = [b.inp(f"C{i}") for i in range(9)]
    E = [b.inp(f"E{i}") for i in range(9)]

    reqa = [b.AND(f"reqa{i}", A[i], E[i]) for i in range(9)]
    reqb = [b.AND(f"reqb{i}", B[i], E[i]) for i in range(9)]
    reqc = [b.AND(f"reqc{i}", C[i], E[i]) for i in range(9)]

    anya = b.OR("anya", *reqa)
    anyb = b.OR("anyb", *reqb)
    anyc = b.OR("anyc", *reqc)
    na = b.NOT("na", anya)
    nb = b.NOT("nb", anyb)

    pa = b.BUFF("PA", anya)
    pb = b.AND("PB", na, anyb)
    pc = b.AND("PC", na, nb, anyc)

    def priority(tag, req):
        sel = [b.BUFF(f"sel{tag}0", req[0])]
        for i in range(1, 9):
            if i == 1:
                ni = b.NOT(f"n{tag}1", req[0])
            else:
                ni = b.NOR(f"n{tag}{i}", *req[:i])
            sel.append(b.AND(f"sel{tag}{i}", req[i], ni))
        return sel

    sela = priority("a", reqa)
    selb = priority("b", reqb)
    selc = priority("c", reqc)

    m = []
    for i in range(9):
        ga = b.AND(f"ga{i}", pa, sela[i])
        gb = b.AND(f"gb{i}", pb, selb[i])
        gc = b.AND(f"gc{i}", pc, selc[i])
        m.append(b.OR(f"m{i}", ga, gb, gc))

    b.OR("CH0", m[1], m[3], m[5], m[7])
    b.OR("CH1", m[2], m[3], m[6], m[7])
    b.OR("CH2", m[4], m[5], m[6], m[7])
    b.BUFF("CH3", m[8])

    for s in ("PA", "PB", "PC", "CH0", "CH1", "CH2", "CH3"):
        b.out(s)

    # behavioral check
    rng = random.Random(432)
    for _ in range(500):
        iv = {s: rng.randint(0, 1) for s in b.inputs}
        val = b.evaluate(iv)
        ra = [iv[f"A{i}"] & iv[f"E{i}"] for i in range(9)]
        rb = [iv[f"B{i}"] & iv[f"E{i}"] for i in range(9)]
        rc = [iv[f"C{i}"] & iv[f"E{i}"] for i in range(9)]
        pa_ = int(any(ra))
        pb_ = int(not any(ra) and any(rb))
        pc_ = int(not any(ra) and not any(rb) and any(rc))
        assert val["PA"] == pa_ and val["PB"] == pb_ and val["PC"] == pc_
        chan = 0
        bus = ra if pa_ else rb if pb_ else rc if pc_ else None
        if bus is not None:
            chan = next(i for i in range(9) if bus[i])
        got = val["CH0"] | val["CH1"] << 1 | val["CH2"] << 2 | val["CH3"] << 3
        assert got == chan, (chan, got)
    return b


# ------------------------------------------------------------- c499 / c1355


def gen_c499(name, expand):
    """32-bit single-error corrector, 41 inputs / 32 outputs.

    Syndrome of data bit i is i+1 (6 bits); C6 is the overall parity check
    and R forces raw pass-through. c1355 is the same function with every
    XOR expanded into NAND trees.
    """
    b = Bench(name)
    ID = [b.inp(f"ID{i}") for i in range(32)]
    C = [b.inp(f"C{i}") for i in range(8)]
    R = b.inp("R")

    # position-parity trees: bit k of (i+1)
    s = []
    for k in range(6):
        members = [ID[i] for i in range(32) if ((i + 1) >> k) & 1]
        if len(members) == 1:
            s.append(b.XOR(f"S{k}", members[0], C[k]))
        else:
            p = b.xor_tree(f"p{k}", members)
            s.append(b.XOR(f"S{k}", p, C[k]))

    # overall parity covers the data word plus the spare check bit C7
    g = b.xor_tree("g", ID + [C[7]])
    e = b.XOR("e", g, C[6])

    nr = b.NOT("nr", R)
    en = b.AND("en", e, nr)
    ns = [b.NOT(f"NS{k}", s[k]) for k in range(6)]

    for i in range(32):
        lits = [(s[k] if ((i + 1) >> k) & 1 else ns[k]) for k in range(6)]
        hit = b.AND(f"hit{i}", *lits)
        fix = b.AND(f"fix{i}", hit, en)
        b.XOR(f"OD{i}", ID[i], fix)
    for i in range(32):
        b.out(f"OD{i}")

    if expand:
        b.expand_xors()

    # behavioral check: clean word passes, one data-bit flip is corrected,
    # one check-bit flip never corrupts the data
    rng = random.Random(499)
    for _ in range(300):
        data = [rng.randint(0, 1) for _ in range(32)]
        c7 = rng.randint(0, 1)
        checks = [0] * 8
        checks[7] = c7
        for k in range(6):
            checks[k] = 0
            for i in range(32):
                if ((i + 1) >> k) & 1:
                    checks[k] ^= data[i]
        checks[6] = c7
        for d in data:
            checks[6] ^= d

        def run(d, c, r):
            iv = {f"ID{i}": d[i] for i in range(32)}
            iv.update({f"C{k}": c[k] for k in range(8)})
            iv["R"] = r
            val = b.evaluate(iv)
            return [val[f"OD{i}"] for i in range(32)]

        assert run(data, checks, 0) == data
        j = rng.randrange(32)
        corrupted = list(data)
        corrupted[j] ^= 1
        assert run(corrupted, checks, 0) == data          # corrected
        assert run(corrupted, checks, 1) == corrupted     # R = raw
        k = rng.randrange(8)
        ck = list(checks)
        ck[k] ^= 1
        assert run(data, ck, 0) == data                   # data unharmed
    return b


# ------------------------------------------------------------------- c880


def gen_c880():
    """8-bit ALU with operand selection, compare and flag logic; 60/26."""
    b = Bench("c880")
    A = [b.inp(f"A{i}") for i in range(8)]
    B = [b.inp(f"B{i}") for i in range(8)]
    C = [b.inp(f"C{i}") for i in range(8)]
    D = [b.inp(f"D{i}") for i in range(8)]
    SA = [b.inp(f"SA{i}") for i in range(4)]
    SB = [b.inp(f"SB{i}") for i in range(4)]
    OP = [b.inp(f"OP{i}") for i in range(5)]
    EN = [b.inp(f"EN{i}") for i in range(8)]
    CIN = b.inp("CIN")
    M = b.inp("M")
    INV = b.inp("INV")
    PE = b.inp("PE")
    SP = b.inp("SP")
    G0 = b.inp("G0")
    G1 = b.inp("G1")

    def operand(tag, sel):
        n0 = b.NOT(f"n{tag}0", sel[0])
        n1 = b.NOT(f"n{tag}1", sel[1])
        d = [b.AND(f"d{tag}0", n1, n0), b.AND(f"d{tag}1", n1, sel[0]),
             b.AND(f"d{tag}2", sel[1], n0), b.AND(f"d{tag}3", sel[1], sel[0])]
        nz = b.NOT(f"n{tag}z", sel[3])
        bits = []
        for i in range(8):
            t = [b.AND(f"{tag}m{i}_{j}", d[j], bus[i])
                 for j, bus in enumerate((A, B, C, D))]
            mx = b.OR(f"{tag}mx{i}", *t)
            xv = b.XOR(f"{tag}xv{i}", mx, sel[2])
            bits.append(b.AND(f"{tag}{i}", xv, nz))
        return bits

    x = operand("x", SA)
    y = operand("y", SB)

    nm = b.NOT("nm", M)
    carry = [b.AND("cc0", CIN, nm)]
    s = []
    pg = []
    g = []
    for i in range(8):
        pg.append(b.XOR(f"pg{i}", x[i], y[i]))
        g.append(b.AND(f"g{i}", x[i], y[i]))
        s.append(b.XOR(f"s{i}", pg[i], carry[i]))
        t = b.AND(f"t{i}", pg[i], carry[i])
        carry.append(b.OR(f"cc{i + 1}", g[i], t))

    no0 = b.NOT("no0", OP[0])
    no1 = b.NOT("no1", OP[1])
    dl = [b.AND("dl0", no1, no0), b.AND("dl1", no1, OP[0]),
          b.AND("dl2", OP[1], no0), b.AND("dl3", OP[1], OP[0])]
    lm = []
    for i in range(8):
        lo = b.OR(f"lor{i}", x[i], y[i])
        lnx = b.NOT(f"lnx{i}", x[i])
        t0 = b.AND(f"lm{i}_0", dl[0], g[i])
        t1 = b.AND(f"lm{i}_1", dl[1], lo)
        t2 = b.AND(f"lm{i}_2", dl[2], pg[i])
        t3 = b.AND(f"lm{i}_3", dl[3], lnx)
        lm.append(b.OR(f"lm{i}", t0, t1, t2, t3))

    F = []
    for i in range(8):
        fa = b.AND(f"fm{i}_a", s[i], nm)
        fb = b.AND(f"fm{i}_b", lm[i], M)
        fm = b.OR(f"fm{i}", fa, fb)
        fi = b.XOR(f"fi{i}", fm, INV)
        F.append(b.AND(f"F{i}", fi, EN[i]))
    for i in range(8):
        la = b.AND(f"lr{i}_a", lm[i], G0)
        lb = b.AND(f"lr{i}_b", pg[i], G1)
        lraw = b.OR(f"lraw{i}", la, lb)
        b.XOR(f"L{i}", lraw, SP)

    b.BUFF("COUT", carry[8])
    b.XOR("OVF", carry[7], carry[8])
    b.NOR("ZERO", *F)
    b.BUFF("NEG", F[7])
    pt = b.xor_tree("pt", F)
    b.XOR("PARITY", pt, PE)

    eq = [b.XNOR(f"eq{i}", x[i], y[i]) for i in range(8)]
    pe_chain = [None] * 8
    pe_chain[7] = b.BUFF("pe7", eq[7])
    for i in range(6, -1, -1):
        pe_chain[i] = b.AND(f"pe{i}", eq[i], pe_chain[i + 1])
    b.BUFF("AEQB", pe_chain[0])
    ny = [b.NOT(f"cny{i}", y[i]) for i in range(8)]
    gt = [b.AND("gt7", x[7], ny[7])]
    for i in range(6, -1, -1):
        gt.append(b.AND(f"gt{i}", x[i], ny[i], pe_chain[i + 1]))
    b.OR("AGTB", *gt)
    nag = b.NOT("nag", "AGTB")
    nae = b.NOT("nae", "AEQB")
    b.AND("ALTB", nag, nae)
    b.AND("ERR", "OVF", OP[2])
    b.XNOR("RDY", OP[3], OP[4])

    for i in range(8):
        b.out(f"F{i}")
    for i in range(8):
        b.out(f"L{i}")
    for sname in ("COUT", "OVF", "ZERO", "NEG", "PARITY", "AGTB", "AEQB",
                  "ALTB", "ERR", "RDY"):
        b.out(sname)

    # behavioral check of the arithmetic path and the compare unit
    rng = random.Random(880)
    for _ in range(300):
        iv = {sname: rng.randint(0, 1) for sname in b.inputs}
        iv.update({f"SA{i}": v for i, v in enumerate((0, 0, 0, 0))})
        iv.update({f"SB{i}": v for i, v in enumerate((1, 0, 0, 0))})
        iv["M"] = 0
        iv["INV"] = 0
        for i in range(8):
            iv[f"EN{i}"] = 1
        val = b.evaluate(iv)
        av = sum(iv[f"A{i}"] << i for i in range(8))
        bv = sum(iv[f"B{i}"] << i for i in range(8))
        total = av + bv + iv["CIN"]
        fv = sum(val[f"F{i}"] << i for i in range(8))
        assert fv == total & 0xFF, (av, bv, iv["CIN"], fv)
        assert val["COUT"] == total >> 8
        assert val["AEQB"] == int(av == bv)
        assert val["AGTB"] == int(av > bv)
        assert val["ZERO"] == int(fv == 0)
    return b


# ------------------------------------------------------------------ c1908


def gen_c1908():
    """16-bit SEC/DED unit with syndrome outputs, 33/25, NAND-expanded."""
    b = Bench("c1908")
    D = [b.inp(f"D{i}") for i in range(16)]
    K = [b.inp(f"K{i}") for i in range(8)]
    T = [b.inp(f"T{i}") for i in range(9)]

    s = []
    for k in range(5):
        members = [D[i] for i in range(16) if ((i + 1) >> k) & 1]
        if len(members) == 1:
            s.append(b.XOR(f"s{k}", members[0], K[k]))
        else:
            p = b.xor_tree(f"p{k}", members)
            s.append(b.XOR(f"s{k}", p, K[k]))

    g = b.xor_tree("g", D + [K[6], K[7]])
    e = b.XOR("e", g, K[5])

    valid = b.OR("valid", *s)
    nt0 = b.NOT("nt0", T[0])
    corr = b.AND("corr", e, valid, nt0)
    ns = [b.NOT(f"ns{k}", s[k]) for k in range(5)]

    for i in range(16):
        lits = [(s[k] if ((i + 1) >> k) & 1 else ns[k]) for k in range(5)]
        hit = b.AND(f"hit{i}", *lits)
        fix = b.AND(f"fix{i}", hit, corr)
        b.XOR(f"OD{i}", D[i], fix)

    ne = b.NOT("ne", e)
    b.AND("DED", ne, valid)
    b.AND("ERR", valid, e)
    for k in range(5):
        b.XOR(f"SY{k}", s[k], T[1])
    b.XOR("PAR", e, T[2])
    vt0 = b.OR("vt0", T[3], T[4])
    vt1 = b.NAND("vt1", T[5], T[6])
    vt2 = b.XNOR("vt2", T[7], T[8])
    b.AND("VLD", vt0, vt1, vt2)

    for i in range(16):
        b.out(f"OD{i}")
    for k in range(5):
        b.out(f"SY{k}")
    for sname in ("ERR", "DED", "PAR", "VLD"):
        b.out(sname)

    b.expand_xors()

    rng = random.Random(1908)
    for _ in range(300):
        data = [rng.randint(0, 1) for _ in range(16)]
        k67 = [rng.randint(0, 1), rng.randint(0, 1)]
        checks = [0] * 8
        checks[6], checks[7] = k67
        for k in range(5):
            for i in range(16):
                if ((i + 1) >> k) & 1:
                    checks[k] ^= data[i]
        checks[5] = k67[0] ^ k67[1]
        for d in data:
            checks[5] ^= d

        def run(d, c, t0=0):
            iv = {f"D{i}": d[i] for i in range(16)}
            iv.update({f"K{k}": c[k] for k in range(8)})
            iv.update({f"T{j}": 0 for j in range(9)})
            iv["T0"] = t0
            val = b.evaluate(iv)
            return [val[f"OD{i}"] for i in range(16)], val

        od, val = run(data, checks)
        assert od == data and val["ERR"] == 0 and val["DED"] == 0
        j = rng.randrange(16)
        corrupted = list(data)
        corrupted[j] ^= 1
        od, val = run(corrupted, checks)
        assert od == data and val["ERR"] == 1            # corrected
        od, val = run(corrupted, checks, t0=1)
        assert od == corrupted                           # correction off
        j2 = (j + 1 + rng.randrange(15)) % 16
        double = list(corrupted)
        double[j2] ^= 1
        od, val = run(double, checks)
        assert val["DED"] == 1                           # double detected
    return b


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    gen_c432().write(f"{outdir}/c432.bench",
                     "27-channel priority interrupt controller (stand-in)")
    gen_c499("c499", False).write(f"{outdir}/c499.bench",
                                  "32-bit single-error corrector (stand-in)")
    gen_c499("c1355", True).write(
        f"{outdir}/c1355.bench",
        "32-bit single-error corrector, XORs NAND-expanded (stand-in)")
    gen_c880().write(f"{outdir}/c880.bench",
                     "8-bit ALU with operand select and compare (stand-in)")
    gen_c1908().write(f"{outdir}/c1908.bench",
                      "16-bit SEC/DED unit, NAND-expanded (stand-in)")


if __name__ == "__main__":
    main()
