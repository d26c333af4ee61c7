"""
Geometria delle due configurazioni di atomi vicino allo specchio.
Le traiettorie di Rindler sono rappresentate dai soli parametri
(allineamento, separazione, z, a); il metodo delle immagini fornisce le distanze.
"""

import math

from loguru import logger

from ..config.settings import get_settings
from ..core.errors import DomainError
from ..core.models import Alignment, ImageDistances, PairGeometry, Zone
from ..core.utils import half_asinh_length, half_sinh_length

# "≪" e "≫" tra a·d e 1 sono interpretati con un fattore 10
ZONE_MARGIN = 10.0


def image_distance(g: PairGeometry) -> ImageDistances:
    """
    Distanza diretta e distanza dall'immagine speculare.

    Per la coppia perpendicolare ℛ = L + 2z; per quella parallela
    R = √(D² + 4z²) e R̃² = D² − 4z², che resta un quadrato con segno.

    Args:
        g: Geometria della coppia

    Returns:
        ImageDistances della configurazione
    """
    if g.alignment is Alignment.PERPENDICULAR:
        return ImageDistances(direct=g.separation, image=g.separation + 2.0 * g.z)

    d = g.separation
    return ImageDistances(
        direct=d,
        image=math.hypot(d, 2.0 * g.z),
        rtilde_sq=d * d - 4.0 * g.z * g.z,
    )


def rindler_interval(a: float, dtau: float) -> float:
    """
    Intervallo spaziale efficace (2/a)·sinh(a·Δτ/2) lungo l'iperbole di Rindler.

    Per a = 0 restituisce esattamente Δτ.
    """
    if a < 0:
        raise DomainError(f"L'accelerazione deve essere >= 0, ricevuta {a}")
    return half_sinh_length(a, dtau, get_settings().numerics.series_threshold)


def light_cone_proper_time(a: float, d: float) -> float:
    """Tempo proprio (2/a)·asinh(a·d/2) impiegato dal segnale a coprire la distanza d"""
    if d <= 0:
        raise DomainError(f"La distanza deve essere > 0, ricevuta {d}")
    if a < 0:
        raise DomainError(f"L'accelerazione deve essere >= 0, ricevuta {a}")
    return half_asinh_length(a, d, get_settings().numerics.series_threshold)


def acceleration_length(a: float) -> float:
    """Lunghezza di accelerazione z_a = 1/a (infinita per atomi inerziali)"""
    if a < 0:
        raise DomainError(f"L'accelerazione deve essere >= 0, ricevuta {a}")
    return math.inf if a == 0 else 1.0 / a


def classify_zone(g: PairGeometry) -> Zone:
    """
    Zona della configurazione rispetto a z_a.

    NEAR se anche la distanza dall'immagine è ≪ z_a, FAR se già la distanza
    diretta è ≫ z_a, INTERMEDIATE se z_a cade tra le due, MIXED nei casi
    di transizione.
    """
    distances = image_distance(g)
    z_a = acceleration_length(g.a)

    if distances.image * ZONE_MARGIN <= z_a:
        zone = Zone.NEAR
    elif distances.direct >= ZONE_MARGIN * z_a:
        zone = Zone.FAR
    elif distances.direct * ZONE_MARGIN <= z_a and distances.image >= ZONE_MARGIN * z_a:
        zone = Zone.INTERMEDIATE
    else:
        zone = Zone.MIXED

    logger.debug(
        f"Zona {zone.value}: z_a={z_a:.3g}, d={distances.direct:.3g}, "
        f"d_img={distances.image:.3g}"
    )
    return zone
