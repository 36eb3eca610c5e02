"""
Signed Gauss codes and the knot quandle presentation they determine.

Grammar: components separated by ',', each a run of tokens O<k><s> or U<k><s>
with s one of '+', '-' or '−'. Whitespace is ignored and an empty component is
a crossingless unknot. Virtual crossings are simply absent from the code.
"""
import logging
import re
from collections import Counter

from app.config.constants import COMPONENT_SEPARATOR, MINUS_SIGNS
from app.core.exceptions import GaussCodeException
from app.models.schemas import GaussCode, GaussToken, Presentation, Relation

logger = logging.getLogger(__name__)

_TOKEN_PATTERN = re.compile(r"([OU])(\d+)([+\-−])")


def parse_gauss(text: str) -> GaussCode:
    # scan with whitespace removed; origin[k] is the input position of compact[k]
    origin = [k for k, char in enumerate(text) if not char.isspace()]
    compact = "".join(text[k] for k in origin)
    components: list[tuple[GaussToken, ...]] = []
    current: list[GaussToken] = []
    pos = 0
    while pos < len(compact):
        char = compact[pos]
        if char == COMPONENT_SEPARATOR:
            components.append(tuple(current))
            current = []
            pos += 1
            continue
        match = _TOKEN_PATTERN.match(compact, pos)
        if not match:
            raise GaussCodeException(
                f"Unexpected '{char}' at position {origin[pos]}; expected O<k><sign> or U<k><sign>",
                {"position": origin[pos]},
            )
        crossing = int(match.group(2))
        if crossing < 1:
            raise GaussCodeException(
                f"Crossing labels start at 1 (position {origin[pos]})", {"position": origin[pos]}
            )
        current.append(GaussToken(
            over=match.group(1) == "O",
            crossing=crossing,
            sign=-1 if match.group(3) in MINUS_SIGNS else 1,
        ))
        pos = match.end()
    components.append(tuple(current))

    code = GaussCode(components=tuple(components))
    _check_crossings(code)
    logger.debug("Parsed Gauss code: %d components, %d crossings",
                 len(code.components), len(code.crossings))
    return code


def _check_crossings(code: GaussCode) -> None:
    tokens = [tok for comp in code.components for tok in comp]
    seen = Counter(tok.crossing for tok in tokens)
    for crossing, count in sorted(seen.items()):
        if count != 2:
            raise GaussCodeException(
                f"Crossing {crossing} appears {count} times; expected twice",
                {"crossing": crossing},
            )
        pair = [tok for tok in tokens if tok.crossing == crossing]
        if pair[0].over == pair[1].over:
            kind = "over" if pair[0].over else "under"
            raise GaussCodeException(
                f"Crossing {crossing} is {kind} on both passes",
                {"crossing": crossing},
            )
        if pair[0].sign != pair[1].sign:
            raise GaussCodeException(
                f"Sign mismatch on crossing {crossing}", {"crossing": crossing}
            )


def format_gauss(code: GaussCode) -> str:
    return COMPONENT_SEPARATOR.join(
        "".join(
            f"{'O' if tok.over else 'U'}{tok.crossing}{'+' if tok.sign > 0 else '-'}"
            for tok in comp
        )
        for comp in code.components
    )


def arcs_and_relations(code: GaussCode) -> Presentation:
    """One generator per arc, one relation per crossing.

    An arc runs from just after one under-pass to the next under-pass. On each
    component, arc r ends at the r-th under-pass, so the first arc holds the
    component's first token. Components are numbered in input order; a component
    with no under-pass is a single arc. At a crossing of sign s the incoming
    under-arc a, the over-arc b and the outgoing under-arc c give (a, b, c, s).
    """
    arc_of_over: dict[int, int] = {}
    under_arcs: dict[int, tuple[int, int, int]] = {}  # crossing -> (incoming, outgoing, sign)
    offset = 0
    for comp in code.components:
        unders = [k for k, tok in enumerate(comp) if not tok.over]
        arcs = max(len(unders), 1)
        local = 0
        for k, tok in enumerate(comp):
            arc = offset + (local % arcs) + 1
            if tok.over:
                arc_of_over[tok.crossing] = arc
            else:
                local += 1
                outgoing = offset + (local % arcs) + 1
                under_arcs[tok.crossing] = (arc, outgoing, tok.sign)
        offset += arcs

    relations = []
    for crossing in sorted(under_arcs):
        a, c, sign = under_arcs[crossing]
        relations.append(Relation(a=a, b=arc_of_over[crossing], c=c, sign=sign, crossing=crossing))
    presentation = Presentation(generators=offset, relations=tuple(relations))
    logger.debug("Presentation: %d generators, %d relations", offset, len(relations))
    return presentation
