"""
Presentation Catalog
Shipped presentations under data/catalog plus Weyl algebras A_n generated on demand
"""
import re
from pathlib import Path
from typing import List, Optional

from algebra.errors import CatalogError
from utils.config import CATALOG_DIR

from .dsl import PresentationFile, parse_or_raise


WEYL_PATTERN = re.compile(r'weyl-(\d+)$')
MAX_WEYL_RANK = 6


def available(catalog_dir: Optional[Path] = None) -> List[str]:
    """Shipped entry names, sorted"""
    catalog_dir = catalog_dir or CATALOG_DIR
    return sorted(path.stem for path in catalog_dir.glob('*.pbw'))


def weyl_source(n: int) -> str:
    """
    DSL text of A_n over K[t_1..t_n]

    Args:
        n: Rank, 1 <= n <= MAX_WEYL_RANK

    Returns:
        Presentation text with x_i t_j = t_j x_i + delta_ij and commuting variables
    """
    if not 1 <= n <= MAX_WEYL_RANK:
        raise ValueError(f"Weyl rank must be between 1 and {MAX_WEYL_RANK}, got {n}")
    gens = [f't{k}' for k in range(1, n + 1)]
    ring = f"K[{','.join(gens)}]"
    lines = [f'# Weyl algebra A_{n}', f'ring {ring}', 'gens ' + ' '.join(gens)]
    for j in range(1, n):
        for i in range(j):
            lines.append(f'rel {gens[j]}*{gens[i]} -> {gens[i]}*{gens[j]}')
    lines.append(f'extension weyl-{n} over {ring}')
    lines.append('vars ' + ' '.join(f'x{k}' for k in range(1, n + 1)))
    for k in range(1, n + 1):
        lines.append(f'sigma {k}: ' + '; '.join(f'{g} -> {g}' for g in gens))
        lines.append(f'delta {k}: ' + '; '.join(f'{g} -> {int(g == gens[k - 1])}' for g in gens))
    for j in range(2, n + 1):
        for i in range(1, j):
            lines.append(f'cross {j} {i} : d = 1')
    return '\n'.join(lines) + '\n'


def source(name: str, catalog_dir: Optional[Path] = None) -> str:
    catalog_dir = catalog_dir or CATALOG_DIR
    path = catalog_dir / f'{name}.pbw'
    if path.exists():
        return path.read_text(encoding='utf-8')
    match = WEYL_PATTERN.match(name)
    if match and 1 <= int(match.group(1)) <= MAX_WEYL_RANK:
        return weyl_source(int(match.group(1)))
    raise CatalogError(name, available(catalog_dir) + [f'weyl-<n> (n <= {MAX_WEYL_RANK})'])


def catalog(name: str, catalog_dir: Optional[Path] = None) -> PresentationFile:
    """Parsed catalog entry; unknown names raise CatalogError listing what exists"""
    return parse_or_raise(source(name, catalog_dir))
