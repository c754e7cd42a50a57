"""Командная строка: python cli.py <команда> [флаги]

Коды возврата: 0: успех, 1: ошибка предметной области, 2: ошибка использования.
"""

import argparse
import contextlib
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from pydantic import ValidationError

from algebra import annulus, cluster, jones, k0
from algebra.bratteli import build_mutation_tree, export_diagram, quotient_to_bratteli
from algebra.laurent import parse, render
from config import CliSettings, settings
from exceptions import AlgebraError, InvalidParameters, InvalidSeed, RelationViolated
from models import BasisFamily, EquivalenceMode, ExportFormat, TableFormat
from schemas import DiagramSchema, SeedSchema

logger = logging.getLogger(__name__)

SEEDS_DIR = Path(__file__).resolve().parent / "data" / "seeds"

STANDARD_SEEDS = {
    "a11": cluster.a11_seed,
    "markov": cluster.markov_seed,
    "a2": cluster.a2_seed,
    "rank1": cluster.rank1_seed,
}


# Разбор аргументов

def _integers(text: str) -> List[int]:
    try:
        return [int(token) for token in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидался список целых чисел: {text!r}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"ожидалось рациональное число: {text!r}")


def _matrix(text: str) -> List[List[int]]:
    """Строки через ';', элементы через ',' или пробел: "1,1;1,0" """
    return [_integers(row) for row in text.split(";") if row.strip()]


def _element(text: str) -> k0.K0Element:
    """Класс K0 в виде "уровень:v1,v2,..." """
    level, _, vector = text.partition(":")
    try:
        return k0.K0Element.of(int(level), _integers(vector))
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидалось уровень:вектор, получено {text!r}")


def _load_seed(args) -> cluster.Seed:
    if args.standard:
        return STANDARD_SEEDS[args.standard]()
    path = Path(args.seed)
    if not path.exists() and (SEEDS_DIR / path.name).exists():
        path = SEEDS_DIR / path.name
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidParameters(f"Не удалось прочитать файл сида {args.seed}: {exc.strerror}")
    try:
        schema = SeedSchema.model_validate_json(text)
    except ValidationError as exc:
        raise InvalidSeed(f"Некорректный файл сида {args.seed}: {exc.error_count()} ошибок", witness=str(exc))
    return schema.to_seed()


def _seed_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--seed", help="JSON-файл сида {n, B, cluster?}")
    source.add_argument("--standard", choices=sorted(STANDARD_SEEDS), help="встроенный сид")


def _dump(data) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


# Команды

def _configure_mutate(parser):
    _seed_arguments(parser)
    parser.add_argument("--directions", type=_integers, default=[], help='направления мутаций, "1 2 1"')
    parser.add_argument("--numeric", type=_integers, help="числовая тень мутаций от набора μ")


def _run_mutate(args) -> str:
    seed = _load_seed(args)
    if args.numeric is not None:
        values = tuple(Fraction(v) for v in args.numeric)
        for k in args.directions:
            values = cluster.numeric_mutate(values, seed.matrix, k)
            seed = cluster.Seed.initial(cluster.matrix_mutate(seed.matrix, k))
        data = {"mu": [str(v) for v in values], "B": seed.matrix.to_rows()}
        if len(values) == 3:
            data["markov_invariant"] = str(cluster.markov_invariant(values))
        return _dump(data)
    seed = cluster.mutate_sequence(seed, args.directions)
    return _dump(SeedSchema.from_seed(seed).model_dump())


def _configure_vars(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--seed", help="JSON-файл сида {n, B, cluster?}")
    source.add_argument("--standard", choices=sorted(STANDARD_SEEDS), help="встроенный сид")
    source.add_argument("--a11", type=int, metavar="I", help="переменные x_{-I}..x_I алгебры A(1,1)")
    parser.add_argument("--depth", type=int, default=2)
    parser.add_argument("--budget", type=int)
    parser.add_argument("--finite-type", action="store_true", help="проверка конечности типа")


def _run_vars(args) -> str:
    if args.a11 is not None:
        bound = abs(args.a11)
        return _dump({str(i): render(annulus.a11_variable(i)) for i in range(-bound, bound + 1)})
    seed = _load_seed(args)
    if args.finite_type:
        result = cluster.is_finite_type(seed, args.budget)
        return _dump({"status": result.status.value, "count": result.count, "seeds_visited": result.seeds_visited})
    found = cluster.enumerate_cluster_variables(seed, args.depth, args.budget, threads=settings.threads)
    positivity = cluster.check_positivity(found)
    return _dump({
        "count": len(found),
        "variables": [render(x) for x in cluster.sort_variables(found)],
        "positive": positivity.positive,
        "witness": render(positivity.witness) if positivity.witness is not None else None,
    })


def _configure_bratteli(parser):
    _seed_arguments(parser)
    parser.add_argument("--depth", type=int, required=True)
    parser.add_argument("--mode", choices=[m.value for m in EquivalenceMode])
    parser.add_argument("--format", choices=[f.value for f in ExportFormat], default=ExportFormat.JSON.value)
    parser.add_argument("--output", help="файл для результата")


def _run_bratteli(args) -> str:
    tree = build_mutation_tree(_load_seed(args), args.depth, threads=settings.threads)
    return export_diagram(quotient_to_bratteli(tree, args.mode), args.format) + ("\n" if args.format == "json" else "")


def _configure_k0(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--diagram", help="JSON-файл диаграммы {levels, edges}")
    source.add_argument("--matrix", type=_matrix, help='стационарная матрица "1,1;1,0"')
    source.add_argument("--pascal", type=int, metavar="DEPTH", help="диаграмма GICAR")
    source.add_argument("--supernatural", type=_integers, metavar="BLOCK", help="период множителей")
    source.add_argument("--riesz", nargs=4, metavar=("A1", "A2", "B1", "B2"), help="интерполяция Рисса")
    parser.add_argument("--repetitions", type=int, default=16)
    parser.add_argument("--element", type=_element, help='класс "уровень:v1,v2"')
    parser.add_argument("--push", type=int, metavar="LEVEL")
    parser.add_argument("--equal", type=_element, metavar="ELEMENT")
    parser.add_argument("--positive", action="store_true")
    parser.add_argument("--trace", action="store_true")
    parser.add_argument("--horizon", type=int)
    parser.add_argument("--contains", type=_fraction, nargs="*", default=[], metavar="R")


def _diagram(args):
    if args.matrix is not None:
        return DiagramSchema(matrix=args.matrix, repetitions=args.repetitions).to_diagram()
    if args.pascal is not None:
        return DiagramSchema(pascal_depth=args.pascal).to_diagram()
    try:
        text = Path(args.diagram).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidParameters(f"Не удалось прочитать файл диаграммы {args.diagram}: {exc.strerror}")
    try:
        schema = DiagramSchema.model_validate_json(text)
    except ValidationError as exc:
        raise InvalidParameters(f"Некорректный файл диаграммы {args.diagram}: {exc.error_count()} ошибок", witness=str(exc))
    return schema.to_diagram()


def _run_k0(args) -> str:
    if args.supernatural is not None:
        number = k0.supernatural_of(args.supernatural)
        return _dump({
            "exponents": {str(p): e for p, e in number.describe().items()},
            "contains": {str(r): k0.qn_contains(number, r) for r in args.contains},
        })
    if args.riesz is not None:
        polynomials = [parse(text) for text in args.riesz]
        nvars = max(p.nvars for p in polynomials)
        a1, a2, b1, b2 = (parse(text, nvars=nvars) for text in args.riesz)
        return _dump({"c": render(k0.riesz_interpolate(a1, a2, b1, b2))})

    d = _diagram(args)
    data: Dict[str, object] = {"levels": d.level_sizes}
    if args.trace:
        state = k0.trace_state(d)
        data["trace"] = {"weights": list(state.weights), "eigenvalue": state.eigenvalue}
        if args.element is not None:
            data["trace"]["value"] = state.evaluate(args.element)
    if args.element is None:
        return _dump(data)
    if args.push is not None:
        data["push"] = list(k0.k0_push(args.element, d, args.push).vector)
    if args.equal is not None:
        result = k0.k0_equal(args.element, args.equal, d, args.horizon)
        data["equal"] = {"status": result.status.value, "level": result.level}
    if args.positive:
        result = k0.k0_is_positive(args.element, d, args.horizon)
        data["positive"] = {
            "status": result.status.value,
            "level": result.level,
            "vector": list(result.vector) if result.vector is not None else None,
            "is_zero": result.is_zero,
            "certificate": result.certificate,
        }
    return _dump(data)


def _configure_gicar(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--coefficients", type=int, nargs="+", help="коэффициенты по возрастанию степеней")
    source.add_argument("--rho", type=int, nargs=2, metavar=("K", "N"), help="ρ([e_k^n]) = x^k(1-x)^{n-k}")
    parser.add_argument("--max-degree", type=int)


def _run_gicar(args) -> str:
    if args.rho is not None:
        return str(k0.gicar_rho(*args.rho)) + "\n"
    element = k0.GicarElement.from_coefficients(args.coefficients)
    result = k0.gicar_is_positive(element, args.max_degree)
    data = {"polynomial": str(element), "status": result.status.value}
    if result.coordinates is not None:
        data.update(degree=result.degree, coordinates=[str(c) for c in result.coordinates])
    if result.point is not None:
        data.update(point=str(result.point), value=str(result.value))
    return _dump(data)


def _configure_moduli(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--t", type=float, help="модуль кольца t ≥ 4")
    source.add_argument("--sweep", type=float, nargs=3, metavar=("START", "STOP", "STEP"))
    source.add_argument("--admissible", type=int, metavar="N_MAX")
    source.add_argument("--roots", type=int, metavar="N", help="невязки корней из единицы")
    source.add_argument("--trace-exchange", type=_fraction, metavar="T")
    source.add_argument("--casimir", action="store_true")
    source.add_argument("--chebyshev", type=int, metavar="N", help="T_n от Казимира")
    parser.add_argument("--format", choices=[f.value for f in TableFormat], default=TableFormat.JSON.value)


def _run_moduli(args) -> str:
    if args.sweep is not None:
        start, stop, step = args.sweep
        if step <= 0:
            raise InvalidParameters(f"Шаг должен быть положительным: {step}")
        count = int((stop - start) / step + 1e-9) + 1
        rows = annulus.moduli_sweep(start + k * step for k in range(count))
        return annulus.format_sweep(rows, args.format)
    if args.admissible is not None:
        result = annulus.admissible_moduli(args.admissible)
        return _dump({
            "continuous_from": result.continuous[0],
            "hecke_from": result.hecke_continuous[0],
            "discrete": [{"n": m.n, "t": m.t, "lambda": m.lam} for m in result.discrete],
        })
    if args.roots is not None:
        return _dump({
            "n": args.roots,
            "roots_residual": annulus.roots_of_unity_check(args.roots),
            "tau_residual": annulus.tau_identity_residual(args.roots),
        })
    if args.trace_exchange is not None:
        return _dump({"t": str(args.trace_exchange), "holds": annulus.verify_trace_exchange(args.trace_exchange)})
    if args.casimir:
        return render(annulus.casimir()) + "\n"
    if args.chebyshev is not None:
        return render(annulus.canonical_basis_element(n=args.chebyshev, family=BasisFamily.CHEBYSHEV)) + "\n"
    return annulus.format_sweep([annulus.solve_moduli(args.t)], args.format)


def _configure_jones(parser):
    parser.add_argument("--strands", type=int, required=True)
    parser.add_argument("--braid", default="", help='слово косы, "1 -2 1 -2"')
    parser.add_argument("--oracle", action="store_true", help="сверить с перебором состояний")
    parser.add_argument("--mirror", action="store_true", help="вывести зеркальный многочлен")


def _run_jones(args) -> str:
    word = jones.BraidWord.parse(args.strands, args.braid)
    value = jones.jones_polynomial(word)
    if args.oracle:
        expected = jones.jones_from_bracket(jones.kauffman_oracle(word), word.writhe)
        if expected != value:
            raise RelationViolated(f"Перебор состояний дал {expected}, через след {value}")
    if args.mirror:
        value = jones.mirror(value)
    return jones.render_jones(value) + "\n"


def _configure_tlcheck(parser):
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--t", type=_fraction, required=True)
    parser.add_argument("--tau", type=_fraction)
    parser.add_argument("--words", type=int)


def _run_tlcheck(args) -> str:
    report = jones.verify_tl_relations(args.n, args.t, args.tau, args.words)
    return _dump({"n": report.n, "t": str(report.t), "tau": str(report.tau), "checks": report.checks})


@dataclass(frozen=True)
class Command:
    help: str
    configure: Callable[[argparse.ArgumentParser], None]
    handler: Callable[[argparse.Namespace], str]
    operations: Tuple[str, ...]


COMMANDS: Dict[str, Command] = {
    "mutate": Command(
        "мутации сида (символьные или числовые)", _configure_mutate, _run_mutate,
        ("seed_mutate", "mutate_sequence", "matrix_mutate", "numeric_mutate", "markov_invariant"),
    ),
    "vars": Command(
        "кластерные переменные, положительность, конечный тип, A(1,1)", _configure_vars, _run_vars,
        ("enumerate_cluster_variables", "check_positivity", "is_finite_type", "a11_variable"),
    ),
    "bratteli": Command(
        "диаграмма Браттели T_n mod ℓ", _configure_bratteli, _run_bratteli,
        ("build_mutation_tree", "seeds_l_equivalent", "quotient_to_bratteli", "export_diagram"),
    ),
    "k0": Command(
        "группы размерности: перенос, равенство, положительность, след", _configure_k0, _run_k0,
        ("k0_push", "k0_equal", "k0_is_positive", "trace_state", "supernatural_of", "qn_contains",
         "riesz_interpolate"),
    ),
    "gicar": Command(
        "положительность в K0 алгебры GICAR", _configure_gicar, _run_gicar,
        ("gicar_rho", "gicar_is_positive"),
    ),
    "moduli": Command(
        "модули кольца и тождества алгебры A(1,1)", _configure_moduli, _run_moduli,
        ("solve_moduli", "admissible_moduli", "roots_of_unity_check", "verify_trace_exchange", "casimir",
         "canonical_basis_element", "moduli_sweep"),
    ),
    "jones": Command(
        "многочлен Джонса замкнутой косы", _configure_jones, _run_jones,
        ("braid_to_tl", "tl_mul", "markov_trace", "jones_polynomial", "kauffman_oracle"),
    ),
    "tlcheck": Command(
        "соотношения Темперли–Либа и марковского следа над Q", _configure_tlcheck, _run_tlcheck,
        ("verify_tl_relations",),
    ),
}


def build_parser() -> argparse.ArgumentParser:
    epilog = "\n".join(f"  {name:<10} {command.help}" for name, command in COMMANDS.items())
    parser = argparse.ArgumentParser(
        prog="cluster-k0",
        description="Кластерные алгебры, диаграммы Браттели, группы K0 и многочлены Джонса",
        epilog="команды:\n" + epilog,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--threads", type=int, default=1, help="число потоков (по умолчанию 1)")
    parser.add_argument("--budget-nodes", type=int, help="лимит узлов дерева мутаций")
    parser.add_argument("-v", dest="verbosity", action="count", default=0)
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="команда")
    for name, command in COMMANDS.items():
        command.configure(subparsers.add_parser(name, help=command.help, description=command.help))
    return parser


@contextlib.contextmanager
def _cli_settings(args):
    """Настройки только из аргументов: окружение и .env не читаются"""
    overrides = {"threads": max(args.threads, 1)}
    if args.budget_nodes:
        overrides["node_budget"] = args.budget_nodes
    fixed = CliSettings(**overrides)
    saved = settings.model_dump()
    for name, value in fixed.model_dump().items():
        setattr(settings, name, value)
    try:
        yield settings
    finally:
        for name, value in saved.items():
            setattr(settings, name, value)


def _paint(text: str, stream: TextIO) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[31m{text}\033[0m"


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbosity, 2), stream=stderr)
    command = COMMANDS[args.command]
    try:
        with _cli_settings(args):
            output = command.handler(args)
    except AlgebraError as exc:
        stderr.write(_paint(exc.code, stderr) + f": {exc.message}\n")
        return 1

    if getattr(args, "output", None):
        Path(args.output).write_text(output, encoding="utf-8")
        logger.info(f"Результат записан в {args.output}")
    else:
        stdout.write(output)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
