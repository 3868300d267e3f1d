import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Callable
from typing import Optional
from typing import Sequence

import logtangent
from logtangent import blowup
from logtangent._errors import LogTangentError
from logtangent._errors import ParseError
from logtangent._errors import PreconditionError
from logtangent._forms import DUAL_VARIABLES
from logtangent._forms import PointP2
from logtangent._forms import parse_form
from logtangent._forms import parse_point
from logtangent._generalized import geometric_candidates
from logtangent._jumping import LineVerdict
from logtangent._p1split import LineP2
from logtangent._p1split import parse_line
from logtangent._sampling import random_lines
from logtangent.config import OutputFormat
from logtangent.config import RunConfig
from logtangent.config import parse_range

LOGGER = logging.getLogger(__name__)

SCHEMA = "logtangent/1"

COORDINATE_LINES = [LineP2((1, 0, 0)), LineP2((0, 1, 0)), LineP2((0, 0, 1))]

CommandResult = tuple[dict, list[str]]


# -- input helpers ------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise ParseError(f"cannot read '{path}': {error}") from error


def _parse_points(text: str) -> list[PointP2]:
    """
    Points ``[a:b:c]`` in any separator, inline or from a file given as
    ``@path``.
    """
    if text.startswith("@"):
        text = _read(text[1:])
    chunks = re.findall(r"\[[^\]]*\]", text)
    if not chunks:
        raise ParseError(f"no point found in '{text}'")
    return [parse_point(chunk) for chunk in chunks]


def _lines_option(values: Optional[Sequence[str]]) -> list[LineP2]:
    return [parse_line(value) for value in values or ()]


def _presentation_of(args: argparse.Namespace):
    """
    The normalized presentation from ``--presentation`` or ``--curve``.
    """
    if args.presentation:
        presentation, _ = logtangent.parse_presentation(_read(args.presentation))
        return presentation
    if args.curve:
        curve = logtangent.parse_curve(args.curve, assume_smooth=args.assume_smooth)
        presentation, _ = logtangent.logtangent_presentation(curve)
        return presentation
    raise ParseError("give --presentation FILE or --curve FORM")


def _verdict_text(verdict: LineVerdict) -> str:
    return (
        f"line {verdict.line}: {'jumping' if verdict.jumping else 'not jumping'} "
        f"order={verdict.order} splitting={verdict.splitting}"
    )


# -- planelog commands --------------------------------------------------------


def _cmd_chern(args, config: RunConfig) -> CommandResult:
    if args.arrangement:
        arrangement = logtangent.parse_arrangement(args.arrangement)
        chern = logtangent.arrangement_chern(arrangement)
        source = f"arrangement of {arrangement.size} lines"
    elif args.curve:
        curve = logtangent.parse_curve(args.curve, assume_smooth=args.assume_smooth)
        if args.marked is not None:
            chern = logtangent.chern_generalized(curve.degree, args.marked)
            source = f"generalized log cotangent sheaf, {args.marked} marked points"
        else:
            presentation, _ = logtangent.logtangent_presentation(curve)
            chern = presentation.chern
            source = "log tangent sheaf"
    else:
        raise ParseError("give --curve FORM or --arrangement LINES")
    data = {"source": source, "c1": chern.c1, "c2": chern.c2}
    return data, [source, f"c1={chern.c1} c2={chern.c2}"]


def _cmd_splitting(args, config: RunConfig) -> CommandResult:
    presentation = _presentation_of(args)
    lines = _lines_option(args.line) or COORDINATE_LINES
    results = []
    text = []
    for line in lines:
        splitting = presentation.restricted_splitting(line, config.degree_window)
        results.append({"line": str(line), "splitting": splitting.to_dict()})
        text.append(f"line {line}: {splitting}")
    return {"restrictions": results}, text


def _cmd_jumping_test(args, config: RunConfig) -> CommandResult:
    presentation = _presentation_of(args).normalized()
    c1 = presentation.chern.c1
    if config.certify:
        if not args.center:
            raise ParseError("--certify needs --center [a:b:c]")
        pencil = logtangent.certify_pencil(presentation, parse_point(args.center), c1)
        text = [
            f"pencil through {pencil.center}: condition {pencil.polynomial_text()}",
            f"jumping members: {pencil.count}",
        ] + [f"  {line}" for line in pencil.lines]
        return {"pencil": pencil.to_dict()}, text
    lines = _lines_option(args.line)
    if not lines:
        raise ParseError("give at least one --line [a0:a1:a2]")
    verdicts = [
        logtangent.jumping_test(presentation, c1, line, config.degree_window) for line in lines
    ]
    return (
        {"c1": c1, "verdicts": [verdict.to_dict() for verdict in verdicts]},
        [_verdict_text(verdict) for verdict in verdicts],
    )


def _cmd_jumping_curve(args, config: RunConfig) -> CommandResult:
    curve = logtangent.parse_curve(args.cubic, assume_smooth=args.assume_smooth)
    lines = _lines_option(args.line)
    if lines:
        report = logtangent.jumping_report_cubic(
            curve, lines, samples=config.samples, rng=config.rng()
        )
        return report.to_dict(), report.text_lines()
    dual = logtangent.jumping_curve_cubic(curve)
    text = dual.to_string(DUAL_VARIABLES)
    return {"dual_curve": text}, [text]


def _cmd_jumping_set(args, config: RunConfig) -> CommandResult:
    pointed = logtangent.parse_pointed_curve(_read(args.pointed), args.assume_smooth)
    presentation = logtangent.generalized_log_presentation(pointed, rng=config.rng())
    report = logtangent.jumping_set_pointed_conic(
        presentation,
        pointed,
        samples=config.samples,
        rng=config.rng(),
        t_range=config.degree_window,
    )
    return report.to_dict(), report.text_lines()


def _cmd_freeness(args, config: RunConfig) -> CommandResult:
    arrangement = logtangent.parse_arrangement(args.arrangement)
    verdict = logtangent.freeness_certificate(arrangement)
    chern = logtangent.arrangement_chern(arrangement)
    presentation = logtangent.arrangement_presentation(arrangement)
    (line,) = random_lines(
        config.rng(),
        1,
        exclude=arrangement.lines,
        avoid=[point for point, _ in arrangement.multiple_points],
    )
    generic = presentation.restricted_splitting(line)
    data = {
        "arrangement": arrangement.to_dict(),
        "c1": chern.c1,
        "c2": chern.c2,
        "freeness": verdict.to_dict(),
        "generic_line": str(line),
        "generic_splitting": generic.to_dict(),
    }
    text = [
        f"lines: {arrangement.size}",
        f"c1={chern.c1} c2={chern.c2}",
        f"verdict: {verdict}{' by ' + verdict.criterion if verdict.criterion else ''}",
        f"splitting on {line}: {generic}",
    ]
    return data, text


def _steiner_report(presentation, pointed) -> list[str]:
    comments = [
        f"built from {pointed.curve.form} marked at "
        + " ".join(str(point) for point in pointed.points),
        f"rank drops at {' '.join(str(point) for point in pointed.points)}",
    ]
    for line in geometric_candidates(pointed):
        verdict = logtangent.jumping_test(presentation, presentation.chern.c1, line)
        comments.append(_verdict_text(verdict))
    return comments


def _write_presentation(args, presentation, comments: list[str]) -> CommandResult:
    text = presentation.to_text(comments)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    data = {"presentation": presentation.to_dict(), "report": comments}
    return data, text.rstrip("\n").splitlines()


def _cmd_steiner(args, config: RunConfig) -> CommandResult:
    pointed = logtangent.parse_pointed_curve(_read(args.pointed), args.assume_smooth)
    presentation = logtangent.steiner_conic_points(pointed.curve, pointed.points)
    return _write_presentation(args, presentation, _steiner_report(presentation, pointed))


def _cmd_nbar_matrix(args, config: RunConfig) -> CommandResult:
    presentation = logtangent.cubic_point_matrix(rng=config.rng())
    comments = [
        f"singular locus {logtangent.CUBIC_MARKED_POINT}",
        f"chern {presentation.chern}",
    ]
    for line in COORDINATE_LINES:
        comments.append(_verdict_text(logtangent.jumping_test(presentation, 0, line)))
    return _write_presentation(args, presentation, comments)


def _cmd_syzygy(args, config: RunConfig) -> CommandResult:
    forms = [parse_form(chunk.strip()) for chunk in args.row.split(";") if chunk.strip()]
    if not forms:
        raise ParseError("empty row of forms")
    basis = logtangent.syzygies_up_to(forms, args.dmax)
    generators = [
        {"degree": degree, "column": [str(entry) for entry in column]}
        for column, degree in basis
    ]
    text = [f"syzygies up to degree {basis.dmax}: degrees {list(basis.degrees)}"]
    text += [
        f"  degree {item['degree']}: ({', '.join(item['column'])})" for item in generators
    ]
    return {"dmax": basis.dmax, "generators": generators}, text


def _cmd_triangle_test(args, config: RunConfig) -> CommandResult:
    curve = logtangent.parse_curve(args.cubic, assume_smooth=args.assume_smooth)
    lines = _lines_option(args.line) or COORDINATE_LINES
    results = [(line, logtangent.triangle_vertex_test(curve, line)) for line in lines]
    return (
        {"lines": [{"line": str(line), "square_in_span": value} for line, value in results]},
        [f"line {line}: {'yes' if value else 'no'}" for line, value in results],
    )


def _pencil_text(pencil) -> list[str]:
    text = [
        f"through {pencil.center}: condition {pencil.polynomial_text()}"
        f"{' and the line at infinity' if pencil.at_infinity else ''}, {pencil.count} lines"
    ]
    return text + [f"  {line}" for line in pencil.lines]


def _cmd_triple_tangents(args, config: RunConfig) -> CommandResult:
    curve = logtangent.parse_curve(args.cubic, assume_smooth=args.assume_smooth)
    pencil = logtangent.triple_tangent_pencil(curve, parse_point(args.point))
    return {"pencil": pencil.to_dict()}, _pencil_text(pencil)


def _cmd_sextic_tangents(args, config: RunConfig) -> CommandResult:
    conic = logtangent.parse_curve(args.conic, assume_smooth=args.assume_smooth)
    points = _parse_points(args.points)
    pencils = logtangent.sextic_jumping_tangents(conic, points)
    text = []
    for pencil in pencils:
        text += _pencil_text(pencil)
    total = sum(pencil.count for pencil in pencils)
    text.append(f"total: {total}")
    return {"pencils": [pencil.to_dict() for pencil in pencils], "total": total}, text


# -- blowup commands ----------------------------------------------------------


def _cmd_pic(args, config: RunConfig) -> CommandResult:
    c = blowup.parse_class(args.cls)
    data = {
        "class": c.to_compact(),
        "sum": c.to_sum(),
        "square": c.square,
        "genus": blowup.genus(c),
        "anticanonical_degree": blowup.intersect(c, blowup.HYPERPLANE),
        "slope_log": str(blowup.slope_log(c)),
    }
    if args.other:
        d = blowup.parse_class(args.other)
        data["with"] = d.to_compact()
        data["intersection"] = blowup.intersect(c, d)
    text = [f"{key}: {data[key]}" for key in data]
    return data, text


def _cmd_lines27(args, config: RunConfig) -> CommandResult:
    lines = blowup.lines27()
    return (
        {"lines": [line.to_compact() for line in lines], "count": len(lines)},
        [f"{line.to_compact():<22} {line.to_sum()}" for line in lines],
    )


def _cmd_pushforward(args, config: RunConfig) -> CommandResult:
    record = blowup.pushforward_blowup(blowup.parse_class(args.cls), args.points)
    return record.to_dict(), record.text_lines()


def _cmd_keylemma(args, config: RunConfig) -> CommandResult:
    divisor = blowup.parse_class(args.divisor)
    curve = blowup.parse_class(args.cls)
    restriction = blowup.key_splitting_on_S(divisor, curve, args.support)
    cotangent = blowup.cotangent_pair(restriction)
    data = {"tangent": restriction.to_dict(), "cotangent": list(cotangent)}
    text = [
        f"T(-log D)|C: sub O({restriction.sub}), quotient O({restriction.quotient})"
        f"{', split' if restriction.forced else ''}",
        f"cotangent twists: {cotangent}",
    ]
    return data, text


def _cmd_destabilizers(args, config: RunConfig) -> CommandResult:
    divisor = blowup.parse_class(args.divisor)
    scenario = blowup.parse_scenario(config.scenario)
    if args.rows:
        rows = blowup.parse_constraint_rows(_read(args.rows))
        annotations = ()
    else:
        table = blowup.restriction_table(divisor, scenario)
        rows, annotations = table.rows, table.annotations
    candidates = blowup.destabilizer_search(
        divisor, rows, config.box, strict=config.strict, annotations=annotations
    )
    data = candidates.to_dict()
    data["divisor"] = divisor.to_compact()
    data["scenario"] = str(scenario) if not args.rows else None
    data["slope"] = str(blowup.slope_log(divisor))
    header = [f"divisor: {divisor.to_compact()}", f"slope: {blowup.slope_log(divisor)}"]
    if not args.rows:
        header.append(f"scenario: {scenario}")
    return data, header + candidates.text_lines()


def _cmd_classify_member(args, config: RunConfig) -> CommandResult:
    member = blowup.classify_pencil_member(parse_line(args.line), _parse_points(args.points))
    return member.to_dict(), [
        str(member),
        "components: " + " + ".join(c.to_compact() for c in member.components),
    ]


def _cmd_general_position(args, config: RunConfig) -> CommandResult:
    result = blowup.general_position(_parse_points(args.points))
    text = "general" if result.general else f"not general: {result.witness}"
    return result.to_dict(), [text]


def _cmd_cremona(args, config: RunConfig) -> CommandResult:
    c = blowup.parse_class(args.cls)
    image = blowup.cremona(c)
    return {"class": c.to_compact(), "image": image.to_compact()}, [image.to_compact()]


def _cmd_omega(args, config: RunConfig) -> CommandResult:
    c = blowup.parse_class(args.cls)
    splitting = blowup.omega_restriction(c)
    return {"class": c.to_compact(), "splitting": splitting.to_dict()}, [str(splitting)]


# -- parser -------------------------------------------------------------------


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed of the random panels")
    common.add_argument(
        "--format", choices=[item.name for item in OutputFormat], default="text"
    )
    common.add_argument("--certify", action="store_true", help="certify whole pencils")
    common.add_argument("--degree-window", metavar="LO:HI", help="profile window of twists")
    common.add_argument("--box", metavar="LO:HI", default="-8:8", help="search box")
    common.add_argument("--scenario", default="generic", help="tangency scenario tag")
    common.add_argument("--strict", action="store_true", help="strict slope inequality")
    common.add_argument("--samples", type=int, default=200, help="random controls")
    common.add_argument("--assume-smooth", action="store_true")
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def _build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="logtangent",
        description="Exact computations with logarithmic sheaves on the plane and the cubic surface.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, function: Callable, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(function=function)
        return sub

    sub = add("chern", _cmd_chern, "Chern classes of a curve or an arrangement")
    sub.add_argument("--curve")
    sub.add_argument("--arrangement")
    sub.add_argument("--marked", type=int, help="number of marked points")

    for name, function, help_text in (
        ("splitting", _cmd_splitting, "splitting type on lines"),
        ("jumping-test", _cmd_jumping_test, "jumping line test"),
    ):
        sub = add(name, function, help_text)
        sub.add_argument("--presentation", metavar="FILE")
        sub.add_argument("--curve")
        sub.add_argument("--line", action="append")
        if name == "jumping-test":
            sub.add_argument("--center", help="pencil center for --certify")

    sub = add("jumping-curve", _cmd_jumping_curve, "dual cubic of jumping lines")
    sub.add_argument("--cubic", required=True)
    sub.add_argument("--line", action="append")

    sub = add("jumping-set", _cmd_jumping_set, "jumping lines of a pointed conic")
    sub.add_argument("--pointed", metavar="FILE", required=True)

    sub = add("freeness", _cmd_freeness, "freeness of a line arrangement")
    sub.add_argument("--arrangement", required=True)

    sub = add("steiner", _cmd_steiner, "Steiner presentation of a conic with 3 points")
    sub.add_argument("--pointed", metavar="FILE", required=True)
    sub.add_argument("--output", metavar="FILE")

    sub = add("nbar-matrix", _cmd_nbar_matrix, "cubic with one marked point")
    sub.add_argument("--output", metavar="FILE")

    sub = add("syzygy", _cmd_syzygy, "syzygies of a row of forms")
    sub.add_argument("--row", required=True, help="forms separated by ';'")
    sub.add_argument("--dmax", type=int)

    sub = add("triangle-test", _cmd_triangle_test, "square of a line in the Jacobian span")
    sub.add_argument("--cubic", required=True)
    sub.add_argument("--line", action="append")

    sub = add("triple-tangents", _cmd_triple_tangents, "lines meeting a cubic once")
    sub.add_argument("--cubic", required=True)
    sub.add_argument("--point", required=True)

    sub = add("sextic-tangents", _cmd_sextic_tangents, "tangents from points to a conic")
    sub.add_argument("--conic", required=True)
    sub.add_argument("--points", required=True)

    sub = add("pic", _cmd_pic, "intersection numbers, genus and slope of a class")
    sub.add_argument("--class", dest="cls", required=True)
    sub.add_argument("--with", dest="other")

    add("lines27", _cmd_lines27, "the 27 lines of the cubic surface")

    sub = add("pushforward", _cmd_pushforward, "push-forward of a line bundle to the plane")
    sub.add_argument("--class", dest="cls", required=True)
    sub.add_argument("--points", type=int, default=6)

    sub = add("keylemma", _cmd_keylemma, "restriction to a rational curve")
    sub.add_argument("--divisor", required=True)
    sub.add_argument("--class", dest="cls", required=True)
    sub.add_argument("--support", type=int, required=True)

    sub = add("destabilizers", _cmd_destabilizers, "destabilizing line bundle candidates")
    sub.add_argument("--divisor", required=True)
    sub.add_argument("--rows", metavar="FILE", help="constraint file instead of the table")

    sub = add("classify-member", _cmd_classify_member, "curve of |L| over a line")
    sub.add_argument("--line", required=True)
    sub.add_argument("--points", required=True)

    sub = add("general-position", _cmd_general_position, "six points in general position")
    sub.add_argument("--points", required=True)

    sub = add("cremona", _cmd_cremona, "quadratic transformation of a class")
    sub.add_argument("--class", dest="cls", required=True)

    sub = add("omega", _cmd_omega, "cotangent sheaf on a rational curve")
    sub.add_argument("--class", dest="cls", required=True)

    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        seed=args.seed,
        output_format=OutputFormat[args.format],
        degree_window=parse_range(args.degree_window) if args.degree_window else None,
        certify=args.certify,
        box=parse_range(args.box, allow_empty=True),
        scenario=args.scenario,
        strict=args.strict,
        samples=args.samples,
    )


def render(command: str, result: CommandResult, config: RunConfig) -> str:
    data, text = result
    if config.output_format is OutputFormat.json:
        payload = {"schema": SCHEMA, "command": command, **data}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return "\n".join(text) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(
        level=level,
        format="{levelname: <7} | {asctime} [{name}] {message}",
        style="{",
        stream=sys.stderr,
    )

    try:
        config = _config_from(args)
        if config.samples < 0:
            raise PreconditionError(f"negative sample count {config.samples}")
        result = args.function(args, config)
    except LogTangentError as error:
        LOGGER.debug("command failed", exc_info=True)
        print(f"logtangent {args.command}: {error}", file=sys.stderr)
        return error.exit_code

    sys.stdout.write(render(args.command, result, config))
    return 0


if __name__ == "__main__":
    sys.exit(main())
