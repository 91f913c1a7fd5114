#!/usr/bin/env python3
"""Generate the bundled seed corpus.

Every file is random but reproducible (fixed generator seed). With --check,
each file is fed to z3 and rejected if z3 reports an error.
"""

import argparse
import pathlib
import random
import subprocess
import sys


class Gen:
    def __init__(self, rng):
        self.rng = rng

    def pick(self, xs):
        return self.rng.choice(xs)

    # --- core / uninterpreted functions -------------------------------------

    def uf_term(self, consts, funs, depth):
        if depth <= 0 or self.rng.random() < 0.3:
            return self.pick(consts)
        f = self.pick(funs)
        return f"({f} {self.uf_term(consts, funs, depth - 1)})"

    def uf_atom(self, consts, funs, preds, depth):
        r = self.rng.random()
        if r < 0.5:
            return f"(= {self.uf_term(consts, funs, depth)} {self.uf_term(consts, funs, depth)})"
        if r < 0.8:
            p = self.pick(preds)
            return f"({p} {self.uf_term(consts, funs, depth)})"
        a = self.uf_term(consts, funs, depth)
        b = self.uf_term(consts, funs, depth)
        c = self.uf_term(consts, funs, depth)
        return f"(distinct {a} {b} {c})"

    # --- arithmetic ---------------------------------------------------------

    def int_term(self, vs, depth, nonlinear=False):
        if depth <= 0 or self.rng.random() < 0.3:
            if self.rng.random() < 0.6:
                return self.pick(vs)
            n = self.rng.randint(0, 20)
            return str(n) if self.rng.random() < 0.8 else f"(- {n})"
        op = self.pick(["+", "-", "*", "+", "-", "ite"] + (["div", "mod"] if nonlinear else []))
        if op == "*":
            if nonlinear:
                return f"(* {self.int_term(vs, depth - 1, nonlinear)} {self.int_term(vs, depth - 1, nonlinear)})"
            return f"(* {self.rng.randint(1, 7)} {self.int_term(vs, depth - 1)})"
        if op == "ite":
            c = self.int_atom(vs, depth - 1, nonlinear)
            return f"(ite {c} {self.int_term(vs, depth - 1, nonlinear)} {self.int_term(vs, depth - 1, nonlinear)})"
        if op in ("div", "mod"):
            return f"({op} {self.int_term(vs, depth - 1, nonlinear)} {self.rng.randint(1, 9)})"
        return f"({op} {self.int_term(vs, depth - 1, nonlinear)} {self.int_term(vs, depth - 1, nonlinear)})"

    def int_atom(self, vs, depth, nonlinear=False):
        op = self.pick(["<", "<=", ">", ">=", "=", "distinct"])
        return f"({op} {self.int_term(vs, depth, nonlinear)} {self.int_term(vs, depth, nonlinear)})"

    def real_term(self, vs, depth):
        if depth <= 0 or self.rng.random() < 0.3:
            if self.rng.random() < 0.6:
                return self.pick(vs)
            return f"{self.rng.randint(0, 9)}.{self.rng.randint(0, 9)}"
        op = self.pick(["+", "-", "*"])
        if op == "*":
            return f"(* {self.rng.randint(1, 5)}.0 {self.real_term(vs, depth - 1)})"
        return f"({op} {self.real_term(vs, depth - 1)} {self.real_term(vs, depth - 1)})"

    def real_atom(self, vs, depth):
        op = self.pick(["<", "<=", ">", ">=", "="])
        return f"({op} {self.real_term(vs, depth)} {self.real_term(vs, depth)})"

    # --- bitvectors ---------------------------------------------------------

    def bv_const(self, w):
        v = self.rng.randrange(1 << w)
        if w % 4 == 0 and self.rng.random() < 0.5:
            return "#x" + format(v, f"0{w // 4}x")
        if self.rng.random() < 0.5:
            return "#b" + format(v, f"0{w}b")
        return f"(_ bv{v} {w})"

    def bv_term(self, vs, w, depth):
        if depth <= 0 or self.rng.random() < 0.25:
            return self.pick(vs) if self.rng.random() < 0.7 else self.bv_const(w)
        op = self.pick(["bvadd", "bvsub", "bvmul", "bvand", "bvor", "bvxor", "bvnot", "bvneg",
                        "bvshl", "bvlshr", "bvudiv", "bvurem", "ite", "extract"])
        if op in ("bvnot", "bvneg"):
            return f"({op} {self.bv_term(vs, w, depth - 1)})"
        if op == "ite":
            return f"(ite {self.bv_atom(vs, w, depth - 1)} {self.bv_term(vs, w, depth - 1)} {self.bv_term(vs, w, depth - 1)})"
        if op == "extract":
            half = w // 2
            inner = self.bv_term(vs, w, depth - 1)
            return f"(concat ((_ extract {w - 1} {half}) {inner}) ((_ extract {half - 1} 0) {inner}))"
        return f"({op} {self.bv_term(vs, w, depth - 1)} {self.bv_term(vs, w, depth - 1)})"

    def bv_atom(self, vs, w, depth):
        op = self.pick(["=", "bvult", "bvule", "bvslt", "bvsge", "bvugt", "distinct"])
        return f"({op} {self.bv_term(vs, w, depth)} {self.bv_term(vs, w, depth)})"

    # --- Boolean structure --------------------------------------------------

    def boolean(self, atom, depth):
        if depth <= 0 or self.rng.random() < 0.3:
            return atom()
        op = self.pick(["and", "or", "not", "=>", "xor", "and", "or", "ite"])
        if op == "not":
            return f"(not {self.boolean(atom, depth - 1)})"
        if op == "ite":
            return f"(ite {self.boolean(atom, depth - 1)} {self.boolean(atom, depth - 1)} {self.boolean(atom, depth - 1)})"
        n = 2 if op in ("=>", "xor") else self.rng.randint(2, 3)
        args = " ".join(self.boolean(atom, depth - 1) for _ in range(n))
        return f"({op} {args})"


def header(logic, comment):
    lines = []
    if comment:
        lines.append(f"; {comment}")
    lines.append('(set-info :smt-lib-version 2.6)')
    if logic:
        lines.append(f"(set-logic {logic})")
    return lines


def gen_qf_uf(g, i):
    n = g.rng.randint(3, 6)
    consts = [f"c{k}" for k in range(n)]
    if i % 3 == 0:
        consts.append("storm_marker")
    lines = header("QF_UF", "uninterpreted functions over one sort")
    lines.append("(declare-sort U 0)")
    for c in consts:
        lines.append(f"(declare-fun {c} () U)")
    funs = ["f", "g"]
    lines.append("(declare-fun f (U) U)")
    lines.append("(declare-fun g (U) U)")
    lines.append("(declare-fun p (U) Bool)")
    lines.append("(declare-fun q (U) Bool)")
    lines.append("(declare-const b Bool)")
    atom = lambda: g.uf_atom(consts, funs, ["p", "q"], 2) if g.rng.random() < 0.9 else "b"
    for _ in range(g.rng.randint(3, 7)):
        lines.append(f"(assert {g.boolean(atom, 3)})")
    lines.append("(check-sat)")
    lines.append("(exit)")
    return lines


def gen_qf_lia(g, i):
    vs = [f"x{k}" for k in range(g.rng.randint(2, 5))]
    if i % 3 == 1:
        vs.append("storm_marker")
    lines = header("QF_LIA", "linear integer arithmetic")
    for v in vs:
        lines.append(f"(declare-fun {v} () Int)")
    for _ in range(g.rng.randint(3, 7)):
        lines.append(f"(assert {g.boolean(lambda: g.int_atom(vs, 2), 3)})")
    if i % 4 == 0:
        lines.append(f"(assert (let ((s (+ {vs[0]} {vs[-1]}))) (and (<= (- 50) s) (<= s 50))))")
    lines.append("(check-sat)")
    return lines


def gen_qf_lra(g, i):
    vs = [f"r{k}" for k in range(g.rng.randint(2, 4))]
    lines = header("QF_LRA", "linear real arithmetic")
    for v in vs:
        lines.append(f"(declare-const {v} Real)")
    for _ in range(g.rng.randint(3, 6)):
        lines.append(f"(assert {g.boolean(lambda: g.real_atom(vs, 2), 2)})")
    lines.append("(check-sat)")
    return lines


def gen_qf_nia(g, i):
    vs = [f"n{k}" for k in range(3)]
    lines = header("QF_NIA", "nonlinear integer arithmetic")
    for v in vs:
        lines.append(f"(declare-const {v} Int)")
    for _ in range(g.rng.randint(2, 4)):
        lines.append(f"(assert {g.boolean(lambda: g.int_atom(vs, 2, nonlinear=True), 2)})")
    lines.append("(check-sat)")
    return lines


def gen_qf_bv(g, i):
    w = g.pick([4, 8, 8, 16, 32])
    vs = [f"v{k}" for k in range(g.rng.randint(2, 4))]
    if i % 3 == 2:
        vs.append("storm_marker")
    lines = header("QF_BV", f"bitvectors of width {w}")
    for v in vs:
        lines.append(f"(declare-fun {v} () (_ BitVec {w}))")
    for _ in range(g.rng.randint(3, 6)):
        lines.append(f"(assert {g.boolean(lambda: g.bv_atom(vs, w, 2), 2)})")
    if i % 4 == 1:
        lines.append(f"(assert (= #b1 ((_ extract 0 0) (bvor {vs[0]} (_ bv1 {w})))))")
    lines.append("(check-sat)")
    return lines


def gen_qf_s(g, i):
    lines = header("QF_S", "strings and regular expressions")
    for v in ("s", "t", "u"):
        lines.append(f"(declare-fun {v} () String)")
    lines.append("(declare-fun k () Int)")
    words = ["a", "ab", "ba", "abc", "xyz", "0", "storm"]
    re_lits = [f'(str.to_re "{w}")' for w in words]

    def regex(d):
        if d <= 0 or g.rng.random() < 0.3:
            return g.pick(re_lits + ['(re.range "a" "z")', "re.allchar"])
        op = g.pick(["re.*", "re.+", "re.union", "re.++", "re.opt"])
        if op in ("re.*", "re.+", "re.opt"):
            return f"({op} {regex(d - 1)})"
        return f"({op} {regex(d - 1)} {regex(d - 1)})"

    def sterm(d):
        if d <= 0 or g.rng.random() < 0.4:
            return g.pick(["s", "t", "u", f'"{g.pick(words)}"'])
        op = g.pick(["str.++", "str.substr", "str.at", "str.replace"])
        if op == "str.++":
            return f"(str.++ {sterm(d - 1)} {sterm(d - 1)})"
        if op == "str.substr":
            return f"(str.substr {sterm(d - 1)} {g.rng.randint(0, 3)} {g.rng.randint(0, 4)})"
        if op == "str.at":
            return f"(str.at {sterm(d - 1)} {g.rng.randint(0, 3)})"
        return f"(str.replace {sterm(d - 1)} {sterm(d - 1)} {sterm(d - 1)})"

    def atom():
        r = g.rng.random()
        if r < 0.35:
            return f"(str.in_re {sterm(1)} {regex(2)})"
        if r < 0.55:
            return f"(= {sterm(2)} {sterm(2)})"
        if r < 0.7:
            return f"(str.prefixof {sterm(1)} {sterm(1)})"
        if r < 0.85:
            return f"(<= (str.len {sterm(1)}) {g.rng.randint(1, 8)})"
        return f"(= k (str.indexof {sterm(1)} {sterm(1)} 0))"

    for _ in range(g.rng.randint(2, 5)):
        lines.append(f"(assert {g.boolean(atom, 2)})")
    lines.append("(check-sat)")
    return lines


def gen_qf_ax(g, i):
    lines = header("QF_AX" if i % 2 else "QF_ALIA", "arrays")
    idx = "Int" if i % 2 == 0 else "Index"
    if i % 2:
        lines.append("(declare-sort Index 0)")
        lines.append("(declare-sort Element 0)")
        lines.append("(declare-fun a () (Array Index Element))")
        lines.append("(declare-fun b () (Array Index Element))")
        for v in ("i", "j", "k"):
            lines.append(f"(declare-fun {v} () Index)")
        lines.append("(declare-fun e () Element)")
        atoms = [
            "(= (select a i) e)", "(= (store a j e) b)", "(= (select b k) (select a k))",
            "(= i j)", "(= a b)", "(= (select (store a i e) j) e)",
        ]
    else:
        lines.append("(declare-fun a () (Array Int Int))")
        lines.append("(declare-fun b () (Array Int Int))")
        for v in ("i", "j"):
            lines.append(f"(declare-fun {v} () Int)")
        atoms = [
            "(= (select a i) 3)", "(< (select b j) (select a j))", "(= (store a i 7) b)",
            "(> (+ i j) 2)", "(= (select (store b j i) i) j)", "(distinct a b)",
        ]
    for _ in range(g.rng.randint(3, 5)):
        lines.append(f"(assert {g.boolean(lambda: g.pick(atoms), 2)})")
    lines.append("(check-sat)")
    return lines


def gen_qf_dt(g, i):
    lines = header("QF_DTLIA" if i % 2 == 0 else "QF_DT", "algebraic datatypes")
    if i % 2 == 0:
        lines.append("(declare-datatypes ((Lst 0)) (((nil) (cons (hd Int) (tl Lst)))))")
        lines.append("(declare-fun l1 () Lst)")
        lines.append("(declare-fun l2 () Lst)")
        lines.append("(declare-fun n () Int)")
        atoms = [
            "((_ is cons) l1)", "(= (hd l1) n)", "(= l2 (cons n l1))", "(> (hd l2) 0)",
            "(= (tl l2) l1)", "(not (= l1 nil))", "(= l1 (cons 1 (cons 2 nil)))",
        ]
    else:
        lines.append("(declare-datatype Color ((red) (green) (blue)))")
        lines.append("(declare-datatypes ((Pair 0)) (((mk (fst Color) (snd Color)))))")
        lines.append("(declare-fun p () Pair)")
        lines.append("(declare-fun c () Color)")
        atoms = [
            "(= (fst p) c)", "(not (= (snd p) red))", "(= p (mk green c))",
            "((_ is blue) c)", "(distinct (fst p) (snd p))",
        ]
    for _ in range(g.rng.randint(3, 5)):
        lines.append(f"(assert {g.boolean(lambda: g.pick(atoms), 2)})")
    lines.append("(check-sat)")
    return lines


def gen_qf_uflia(g, i):
    lines = header("QF_UFLIA", "uninterpreted functions with integers")
    vs = ["x", "y", "z"]
    for v in vs:
        lines.append(f"(declare-fun {v} () Int)")
    lines.append("(declare-fun f (Int) Int)")
    lines.append("(declare-fun h (Int Int) Int)")
    lines.append("(declare-fun P (Int) Bool)")
    lines.append("(define-fun twice ((a Int)) Int (+ a a))")

    def atom():
        t = g.int_atom(vs, 1)
        r = g.rng.random()
        if r < 0.3:
            return f"(= (f {g.pick(vs)}) (twice {g.pick(vs)}))"
        if r < 0.5:
            return f"(P (h {g.pick(vs)} (f {g.pick(vs)})))"
        return t

    for _ in range(g.rng.randint(3, 6)):
        lines.append(f"(assert {g.boolean(atom, 2)})")
    lines.append("(check-sat)")
    return lines


def gen_quantified(g, i):
    logic = ["UFLIA", "LIA", "UF", "AUFLIA", "UFLIA"][i % 5]
    lines = header(logic, "quantified formulas")
    if logic == "UF":
        lines.append("(declare-sort S 0)")
        lines.append("(declare-fun r (S S) Bool)")
        lines.append("(declare-fun a () S)")
        lines.append("(declare-fun b () S)")
        lines.append("(assert (forall ((x S)) (r x x)))")
        lines.append("(assert (forall ((x S) (y S)) (=> (r x y) (r y x))))")
        lines.append("(assert (or (r a b) (not (= a b))))")
        lines.append("(assert (exists ((z S)) (and (r a z) (r z b))))")
    elif logic == "LIA":
        lines.append("(declare-fun x () Int)")
        lines.append("(declare-fun y () Int)")
        lines.append(f"(assert (forall ((k Int)) (=> (and (<= 0 k) (< k {g.rng.randint(2, 9)})) (< (+ x k) y))))")
        lines.append("(assert (exists ((m Int)) (and (> m x) (= y (* 2 m)))))")
        lines.append(f"(assert (or (> x {g.rng.randint(0, 5)}) (< y 0)))")
    else:
        lines.append("(declare-fun f (Int) Int)")
        lines.append("(declare-fun c () Int)")
        lines.append("(declare-fun P (Int) Bool)")
        if logic == "AUFLIA":
            lines.append("(declare-fun arr () (Array Int Int))")
            lines.append("(assert (forall ((i Int)) (! (>= (select arr i) 0) :pattern ((select arr i)))))")
        lines.append("(assert (forall ((x Int)) (! (>= (f x) 0) :pattern ((f x)))))")
        lines.append(f"(assert (! (P (f c)) :named a{i}))")
        lines.append(f"(assert (or (> c {g.rng.randint(0, 9)}) (forall ((y Int)) (or (P y) (not (P y))))))")
        lines.append("(assert (exists ((z Int)) (and (P z) (< z (f c)))))")
    lines.append("(check-sat)")
    return lines


def gen_misc(g, i):
    """Scripts exercising command-level features."""
    variants = [
        [
            "; push/pop and multiple queries",
            "(set-logic QF_LIA)",
            "(set-option :produce-models true)",
            "(declare-const a Int)",
            "(declare-const b Int)",
            "(assert (> a 0))",
            "(push 1)",
            "(assert (< (+ a b) 5))",
            "(check-sat)",
            "(get-model)",
            "(pop 1)",
            "(assert (= b (* 3 a)))",
            "(check-sat)",
        ],
        [
            "(set-logic QF_BV)",
            "(define-sort Word () (_ BitVec 16))",
            "(declare-fun w () Word)",
            "(declare-fun z () Word)",
            "(define-fun low ((v Word)) (_ BitVec 8) ((_ extract 7 0) v))",
            "(assert (= (low w) #xab))",
            "(assert (bvult z (bvadd w #x0001)))",
            "(assert (let ((m (bvmul w z))) (not (= m #x0000))))",
            "(check-sat-using (then simplify bit-blast sat))",
        ],
        [
            "(set-info :status sat)",
            "(set-logic QF_LIA)",
            "(declare-fun p () Bool)",
            "(declare-fun q () Bool)",
            "(declare-fun n () Int)",
            "(assert (! (=> p (> n 3)) :named imp))",
            "(assert (xor p q))",
            "(assert (let ((m (+ n 1)) (k (- n 1))) (and (> m k) (or q (= m 5)))))",
            "(check-sat)",
        ],
        [
            "; no set-logic",
            "(declare-const s String)",
            "(declare-const i Int)",
            "(assert (= (str.len s) i))",
            "(assert (str.in_re s (re.+ (str.to_re \"ab\"))))",
            "(assert (> i 3))",
            "(check-sat)",
        ],
        [
            "(set-logic QF_UFBV)",
            "(declare-fun f ((_ BitVec 8)) (_ BitVec 8))",
            "(declare-fun x () (_ BitVec 8))",
            "(declare-fun y () (_ BitVec 8))",
            "(assert (= (f x) (bvadd y #x01)))",
            "(assert (not (= (f (f x)) x)))",
            "(assert (bvsle ((_ sign_extend 8) x) ((_ zero_extend 8) y)))",
            "(assert (= ((_ rotate_left 3) x) ((_ repeat 1) y)))",
            "(check-sat)",
        ],
        [
            "(set-logic QF_ABV)",
            "(declare-fun mem () (Array (_ BitVec 32) (_ BitVec 8)))",
            "(declare-fun addr () (_ BitVec 32))",
            "(assert (= (select mem addr) #x2a))",
            "(assert (= (select (store mem (bvadd addr #x00000001) #x00) addr) #x2a))",
            "(assert (bvugt addr #x00001000))",
            "(check-sat)",
            "(exit)",
        ],
        [
            "; legacy string syntax",
            "(set-logic QF_S)",
            "(declare-fun x () String)",
            "(declare-fun y () String)",
            "(assert (str.in.re x (re.* (str.to.re \"storm\"))))",
            "(assert (str.in.re y (re.union (str.to.re \"a\") (re.range \"0\" \"9\"))))",
            "(assert (not (= x y)))",
            "(check-sat)",
        ],
        [
            "(set-logic QF_LRA)",
            "(declare-fun |weird name| () Real)",
            "(declare-fun y () Real)",
            "(assert (>= |weird name| (/ 1 3)))",
            "(assert (< (+ |weird name| y) 2.5))",
            "(assert (or (= y 0.0) (> (* 2 y) |weird name|)))",
            "(check-sat)",
        ],
    ]
    return variants[i % len(variants)]


GENERATORS = [
    ("qf_uf", gen_qf_uf, 7),
    ("qf_lia", gen_qf_lia, 8),
    ("qf_lra", gen_qf_lra, 3),
    ("qf_nia", gen_qf_nia, 2),
    ("qf_bv", gen_qf_bv, 7),
    ("qf_s", gen_qf_s, 5),
    ("qf_ax", gen_qf_ax, 4),
    ("qf_dt", gen_qf_dt, 3),
    ("qf_uflia", gen_qf_uflia, 3),
    ("quant", gen_quantified, 5),
    ("misc", gen_misc, 8),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=pathlib.Path)
    ap.add_argument("--seed", type=int, default=2020)
    ap.add_argument("--check", action="store_true", help="validate every file with z3")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    g = Gen(rng)
    bad = 0
    count = 0
    for name, fn, n in GENERATORS:
        for i in range(n):
            text = "\n".join(fn(g, i)) + "\n"
            path = args.out / f"{name}_{i:02d}.smt2"
            path.write_text(text)
            count += 1
            if args.check:
                r = subprocess.run(["z3", "-T:10", str(path)], capture_output=True, text=True)
                if "error" in r.stdout or r.returncode not in (0, 1):
                    print(f"{path}: {r.stdout.strip()}", file=sys.stderr)
                    bad += 1
    print(f"wrote {count} files", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
