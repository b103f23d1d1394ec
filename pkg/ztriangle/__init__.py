from ztriangle.ztriangle_core import ZTriangleCore
from ztriangle.patterns.verify.verify_model import VerifyModel
