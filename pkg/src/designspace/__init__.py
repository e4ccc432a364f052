"""Design-space mining for categorical corpora.

Core pipeline: Gower distances over categorical records, exact
agglomerative clustering with silhouette and bootstrap validation,
multiple correspondence analysis with Benzecri-corrected variance, and
an evidence-backed recommender over partial designs.
"""

from .dataset import Dataset, Dimension, Record, read_dataset, summarize
from .errors import (
    DatasetError,
    DegenerateInputError,
    DesignSpaceError,
    UnknownDimensionError,
    UnknownValueError,
)
from .gower import DistanceMatrix, distance_matrix, gower_distance
from .hac import (
    Dendrogram,
    Merge,
    Partition,
    cluster,
    cut,
    partition_by_dimension,
    to_newick,
)
from .mca import McaResult, benzecri_correct, mca, retain_dimensions, top_contributions
from .recommender import (
    NavigationTree,
    Recommendation,
    build_tree,
    descend,
    recommend,
)
from .validation import (
    SilhouetteReport,
    StabilityReport,
    bootstrap_stability,
    silhouette,
    silhouette_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "Dimension",
    "Record",
    "read_dataset",
    "summarize",
    "DesignSpaceError",
    "DatasetError",
    "UnknownDimensionError",
    "UnknownValueError",
    "DegenerateInputError",
    "DistanceMatrix",
    "gower_distance",
    "distance_matrix",
    "Dendrogram",
    "Merge",
    "Partition",
    "cluster",
    "cut",
    "partition_by_dimension",
    "to_newick",
    "McaResult",
    "mca",
    "benzecri_correct",
    "retain_dimensions",
    "top_contributions",
    "Recommendation",
    "NavigationTree",
    "recommend",
    "build_tree",
    "descend",
    "SilhouetteReport",
    "StabilityReport",
    "silhouette",
    "silhouette_sweep",
    "bootstrap_stability",
    "__version__",
]
